"""
The symmetric-difference metric
===============================

Distances between small Delzant polygons, computed exactly, alongside a
Monte-Carlo estimate and the Hausdorff distance for comparison.
"""

from fractions import Fraction

from toric_moduli import (
    FloatPolygon,
    corner_chop,
    delzant_triangle,
    dh_measure,
    estimate_sym_diff,
    hausdorff,
    hirzebruch,
    sym_diff_distance,
)
from toric_moduli.geometry import rectangle

D1, D2 = delzant_triangle(1), delzant_triangle(2)
print("d(D1, D2) =", sym_diff_distance(D1, D2))

# chopping a corner of size e always costs e^2 / 2
square = hirzebruch(1, 1, 0)
for e in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
    print(f"chop {e}: d = {sym_diff_distance(square, corner_chop(square, 1, e))}")

# the Duistermaat-Heckman measure of a unit box inside D2
print("DH(D2, [0,1]^2) =", dh_measure(D2, rectangle(0, 0, 1, 1)))

est = estimate_sym_diff(D1, D2, samples=200_000, seed=0)
print(f"Monte-Carlo: {est.value:.4f} +/- {est.stderr:.4f}")

# Hausdorff works on floats and is a different metric altogether
print("Hausdorff(D1, D2) =", hausdorff(FloatPolygon.from_polygon(D1), FloatPolygon.from_polygon(D2)))
