"""Walkthrough: the intersection ledger and the Riemann-Roch normalization shift.

Run:  python demos/riemann_roch_rescale.py
"""

import random
from fractions import Fraction

from pak.ledger import (
    ArakelovDivisor,
    IdeleCharacter,
    adjunction_check,
    make_synthetic_surface,
    rr_delta_check,
    rr_rescale_invariance,
    validate_character,
)
from pak.padic import Qp

K = Qp(5, 32)
char = IdeleCharacter.make_standard(K)  # t = id, log(5) = 0, ell_q(q) = -log_5 q

# The class condition: the character kills every rational number.
rep = validate_character(char, [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-1), Fraction(5)])
print("standard character validates on Q^x generators:", rep["ok"])

# A synthetic arithmetic surface: sections over Z with random finite
# intersection data and a random Green table, self-intersections solved so
# per-section adjunction holds exactly.
rng = random.Random(1)
g = 2
S = make_synthetic_surface(K, char, g, 7, rng)

E = ArakelovDivisor([("s0", 1), ("s1", 1)])
print("adjunction residual on E:", adjunction_check(S, E)["residual"])

D = ArakelovDivisor([("s2", 1)], K.from_int(2))
print("RR delta residual (adding E to D):", rr_delta_check(S, D, E))

# Shifting the Green function by a constant c moves both sides of
# Riemann-Roch by the same amount: -c d(d+1-2g)/2 for a degree-d line bundle.
d = 3
L = ArakelovDivisor([("s%d" % i, 1) for i in range(d)])
for c in (K.from_int(1), K.from_int(-1)):
    dl, dr, closed = rr_rescale_invariance(S, L, c)
    print("shift c=%r: delta LHS == delta RHS:" % c, (dl - dr).is_zeroish(),
          " matches -c d(d+1-2g)/2:", (dl - closed).is_zeroish())
