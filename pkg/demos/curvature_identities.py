"""Walkthrough: the curvature classes on a curve and its square.

Run:  python demos/curvature_identities.py
"""

from pak.curvature import (
    DeRhamSpace,
    cup_of_htensor,
    diagonal_class,
    diagonal_pullback,
    mu,
    phi,
    section_pullback,
)

for g in range(1, 5):
    sp = DeRhamSpace(g)
    M = mu(sp)      # (1/g) sum wbar_i (x) omega_i
    PH = phi(sp)    # the product-surface class with cup = class of the diagonal

    print("genus %d:" % g)
    print("  diagonal pullback of Phi == (2-2g) mu:",
          diagonal_pullback(PH) == M.scale(2 - 2 * g))
    print("  section pullback of Phi  == mu:       ",
          section_pullback(PH) == M)
    print("  cup(Phi) == class of the diagonal:    ",
          cup_of_htensor(PH) == diagonal_class(sp))

# The diagonal class itself, for genus 1: both top classes with coefficient 1
# plus the inverse-duality mixed block.
sp = DeRhamSpace(1)
cl = diagonal_class(sp)
print("\ngenus-1 diagonal class: top coefficients", cl.top1, cl.top2)
print("mixed block:", cl.mixed)
