"""Walkthrough: capped p-adic arithmetic, extensions and root splitting.

Run:  python demos/splitting_fields.py
"""

from fractions import Fraction

from pak.padic import (
    LogBranch,
    Qp,
    embeddings,
    make_extension,
    norm,
    padic_log,
    splitting_roots,
    teichmueller,
    trace,
)
from pak.padic import poly as P

K = Qp(5, 32)
br = LogBranch.iwasawa(K)

# Capped relative precision: every value carries its own tracked digits.
x = K.from_fraction(Fraction(7, 50))
print("7/50 in Q_5:", x, " valuation:", x.valuation())

# The branch logarithm is a homomorphism on all of Q_5^x.
print("log(6) + log(7) == log(42):",
      (padic_log(K.from_int(6), br) + padic_log(K.from_int(7), br)
       - padic_log(K.from_int(42), br)).is_zeroish())
t = teichmueller(K.from_int(2))
print("Teichmueller lift of 2: order divides 4:", (t ** 4 - 1).is_zeroish(),
      " log vanishes:", padic_log(t, br).is_zeroish())

# Extensions are certified pure steps: unramified or Eisenstein.
K2 = make_extension(K, [K.from_int(-2), K.zero(), K.one()])
print("Q_5(sqrt 2): e=%d f=%d" % (K2.e, K2.f))
s = K2.gen()
print("trace, norm of sqrt2:", trace(s, K2, K), norm(s, K2, K))
print("embeddings send sqrt2 to +-sqrt2:",
      [(e(s) - s).is_zeroish() or (e(s) + s).is_zeroish() for e in embeddings(K2, K2)])

# Root splitting grows the tower as needed (depth <= 2, bounded degree).
f = P.pmul(K, [K.from_int(-2), K.zero(), K.one()], [K.from_int(-5), K.zero(), K.one()])
f = P.pmul(K, f, [K.from_int(-3), K.one()])
roots, L = splitting_roots(f, K)
print("(t^2-2)(t^2-5)(t-3) splits over a degree-%d tower; %d roots:"
      % (L.e_abs * L.f_abs, len(roots)))
for r, m in roots:
    print("   valuation %s, multiplicity %d" % (r.valuation(), m))
