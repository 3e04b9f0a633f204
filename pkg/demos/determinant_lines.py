"""Walkthrough: logs on determinant lines, trace duality, codifferents.

Run:  python demos/determinant_lines.py
"""

from fractions import Fraction

from pak.detline import (
    QuadraticOrder,
    codifferent_and_chi,
    det_K_log,
    trace_dual_basis,
    trace_dual_check,
)
from pak.ledger import IdeleCharacter
from pak.padic import LogBranch, Qp, make_extension, padic_log

K = Qp(5, 32)
br = LogBranch.iwasawa(K)
K2 = make_extension(K, [K.from_int(-2), K.zero(), K.one()])  # Q_5(sqrt 2)

# The log of a wedge: for the basis (1, sqrt2) the embedding matrix has
# determinant -2*sqrt2, whose log is (3/2) log 2.
beta = [K2.one(prec=40), K2.gen()]
val = det_K_log(K2, K, beta, K2.one(prec=40), K.zero(), br)
print("log of the basis wedge:", val)
print("equals (3/2) log 2:", (val - padic_log(K.from_int(2), br) * Fraction(3, 2)).is_zeroish())

# The trace form is an isometry: the wedge-logs of a basis and its trace-dual
# basis cancel.  For (1, sqrt2) the dual basis is (1/2, sqrt2/4).
dual = trace_dual_basis(K2, K, beta)
print("trace-dual basis coordinates:", [[repr(c)[:18] for c in b.coeffs] for b in dual])
print("wedge-log sum vanishes:", trace_dual_check(K2, K, beta, br).is_zeroish())

# The codifferent of the Gaussian integers is (1/2i) Z[i]; its degree as a
# metrized line over Z at p = 5 with the standard character is -2 log_5 2,
# so the Euler characteristic of Z[i] is log_5 2.
char = IdeleCharacter.make_standard(K)
out = codifferent_and_chi(QuadraticOrder(-1), char, br)
print("deg of the Gaussian codifferent:", out["deg_W"])
print("chi(Z[i]):", out["chi"])
print("equals log_5 2:", (out["chi"] - padic_log(K.from_int(2), br)).is_zeroish())
