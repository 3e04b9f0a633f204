"""Walkthrough: the double index on Laurent-log elements and on the line.

Run:  python demos/double_index_walkthrough.py
"""

from pak.padic import LogBranch, Qp, padic_log
from pak.laurent import A1Element, LaurentTrunc, double_index
from pak.projline import MeromorphicForm, global_double_index

K = Qp(5, 32)
branch = LogBranch.iwasawa(K)  # log(5) = 0

# --- the local pairing ------------------------------------------------------
# Elements of the pairing's domain look like f(z) + a*log(z) with f a Laurent
# series.  The pairing is Res(f dg) + b*f0 - a*g0: the unique antisymmetric
# bilinear extension of (F, G) |-> Res(F dG).

W = 24
L = A1Element(LaurentTrunc.zero(K, W), K.one())  # the formal log itself

# log(t - 2) expanded at the origin: log(-2) + log(1 - t/2)
from fractions import Fraction

pairs = [(0, padic_log(K.from_int(-2), branch))]
for k in range(1, W):
    pairs.append((k, K.from_fraction(Fraction(-1, k * 2 ** k))))
G0 = A1Element(LaurentTrunc.from_pairs(K, pairs, W), K.zero())

print("<log z, log(t-2)@0> =", double_index(L, G0))
print("  ... equals -log(-2):", (double_index(L, G0) + padic_log(K.from_int(-2), branch)).is_zeroish())

# --- the global pairing -----------------------------------------------------
# On the projective line every pairing of meromorphic forms vanishes: the sum
# of the local indices at the three singular points of dlog t and dlog(t-2)
# telescopes to zero.

w1 = MeromorphicForm.dlog(K, [K.zero(), K.one()])
w2 = MeromorphicForm.dlog(K, [K.from_int(-2), K.one()])
total, report = global_double_index(w1, w2, branch, report=True)
for pt, v in report:
    print("local index at %-14s %r" % (pt, v))
print("global sum:", total, " vanishes:", total.is_zeroish())
