"""Walkthrough: height pairings from Green tables and the two-anchor formula.

Run:  python demos/green_and_heights.py
"""

import random

from pak.green import DivisorFormal, GreenTable, HeightOracle, green_from_formula, pairing_from_green
from pak.padic import Qp

K = Qp(5, 32)
rng = random.Random(0)
g = 2

# A symmetric table of Green values on a handful of points.  The two-anchor
# reconstruction needs auxiliary degree-(2g-2) divisors on which the Green
# functions of Q-b and P-a vanish; we solve one entry of the table for each.
pts = ["a", "b", "P", "Q"] + ["z%d" % i for i in range(2 * g)] + ["y%d" % i for i in range(2 * g)]
ent = {}
for i, p in enumerate(pts):
    for q in pts[i + 1:]:
        ent[(p, q)] = K.from_int(rng.randint(-30, 30))
val = lambda p, q: ent[(p, q)] if (p, q) in ent else ent[(q, p)]

def setval(p, q, v):
    ent[(p, q) if (p, q) in ent else (q, p)] = v

setval("a", "b", K.zero())  # anchor normalization G(a,b) = 0
zs = ["z%d" % i for i in range(2 * g)]
ys = ["y%d" % i for i in range(2 * g)]
acc = K.zero()
for z in zs[1:]:
    acc = acc + val("Q", z) - val("b", z)
setval("Q", "z0", val("b", "z0") - acc)
acc = K.zero()
for y in ys[1:]:
    acc = acc + val("P", y) - val("a", y)
setval("P", "y0", val("a", "y0") - acc)

table = GreenTable(K, g, [(p, q, v) for (p, q), v in ent.items()], anchor=("a", "b"))

# Bilinear pairing of degree-zero divisors through the table:
D = DivisorFormal([("P", 1), ("a", -1)])
E = DivisorFormal([("Q", 1), ("b", -1)])
print("height pairing <P-a, Q-b> =", pairing_from_green(table, D, E))

# The reconstruction formula assembles G(P,Q) out of two height integrals:
oracle = HeightOracle.from_table(table)
w2 = DivisorFormal([(z, 1) for z in zs] + [("Q", -1), ("b", -1)])
w1 = DivisorFormal([(y, 1) for y in ys] + [("P", -1), ("a", -1)])
got = green_from_formula(oracle, g, "a", "b", "P", "Q", w1, w2)
print("formula value:", got)
print("table value:  ", table.value("P", "Q"))
print("reproduced:", (got - table.value("P", "Q")).is_zeroish())
