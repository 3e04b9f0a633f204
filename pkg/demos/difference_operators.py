"""Walkthrough: n-step difference operators and degree-2 determinacy.

Run:  python demos/difference_operators.py
"""

import random
from fractions import Fraction

from pak.cubediff import (
    AbelianModel,
    GroupFunction,
    annihilates_low_degree,
    dd_n,
    dd_n_recursive,
    green_determinacy_demo,
)

m = AbelianModel(1)
rng = random.Random(0)

# D^2 applied to x^2 picks out the polarization 2 h1 h2.
f = GroupFunction.monomial(m, (2,))
x, h = (Fraction(3),), [(Fraction(2),), (Fraction(5),)]
print("D^2 x^2 at x=3, h=(2,5):", dd_n(f, 2, x, h), " (= 2*2*5)")

# Subset-sum and recursive evaluations agree everywhere.
g = GroupFunction.polynomial(m, [(2, (4,)), (-1, (2,)), (3, (0,))])
pt, steps = (Fraction(1),), [(Fraction(2),), (Fraction(-1),), (Fraction(3),)]
print("subset-sum vs recursion:", dd_n(g, 3, pt, steps), dd_n_recursive(g, 3, pt, steps))

# D^n annihilates every polynomial of total degree < n.
print("D^4 kills degree <= 3:", annihilates_low_degree(m, 4, 4))

# Degree-2 determinacy: adding any quadratic to a function leaves its third
# differences unchanged, so data pinned by D^3 is unique up to quadratics.
G = GroupFunction.polynomial(m, [(1, (3,)), (2, (2,))])
G2 = GroupFunction.polynomial(m, [(1, (3,)), (5, (2,)), (7, (1,)), (3, (0,))])
cert = [(3, (2,)), (7, (1,)), (3, (0,))]
print("quadratic perturbation invisible to D^3:",
      green_determinacy_demo(G, G2, 30, rng, certificate=cert) == 0)
G3 = GroupFunction.polynomial(m, [(2, (3,)), (2, (2,))])
print("cubic perturbation witnessed:", green_determinacy_demo(G, G3, 30, rng) != 0)
