"""
Approximating convex bodies
===========================

Density in action: the unit disc and an irrational triangle are each
approximated by Delzant polygons with a certified Monte-Carlo bound.
"""

import math

from toric_moduli import FloatPolygon, SupportOracle, delzant_approximate, rationalize
from toric_moduli.geometry import float_sym_diff

for eps in (0.2, 0.1, 0.05):
    A = delzant_approximate(SupportOracle.disc(), eps, samples=200_000, seed=1)
    print(f"disc, eps = {eps}: {len(A.polygon)} edges, upper bound {A.estimate.upper():.4f}")
    for s in A.stages:
        print(f"    {s.name:<10} budget {s.budget:.4f} used {s.estimate:.4f}")

T = FloatPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, math.sqrt(2))])
for eps in (1e-1, 1e-2, 1e-3):
    R = rationalize(T, eps)
    print(f"rationalize, eps = {eps}: d = {float_sym_diff(T, R):.2e}, top vertex y = {R.vertices[-1].y}")
