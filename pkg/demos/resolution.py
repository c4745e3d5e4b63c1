"""
Resolving singular corners
==========================

A rational polygon can fail smoothness at a vertex. Cutting the corner
along the lines given by a continued fraction expansion repairs it while
moving the polygon very little.
"""

from fractions import Fraction

from toric_moduli import Polygon, smooth, sym_diff_distance, validate
from toric_moduli.resolve import resolve_vertex, vertex_defect

T = Polygon([(0, 0), (1, 0), (0, 5)])
i = T.index_of((1, 0))
print("defect at (1, 0):", vertex_defect(T, i))

R, trace = resolve_vertex(T, i, Fraction(1, 16))
print("alpha sequence:", trace.alpha_sequence)
print("new edges:", trace.new_edges)
print("delzant after the cut:", validate(R).is_delzant)

print("\nsmoothing every corner with shrinking budgets")
for k in range(2, 7):
    eps = Fraction(1, 2**k)
    S = smooth(T, eps)
    print(f"  eps = {eps}: {len(S)} edges, loss {float(sym_diff_distance(T, S)):.2e}")
