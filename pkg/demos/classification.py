"""
Normal forms and explicit paths
===============================

Every Delzant polygon is a triangle or Hirzebruch trapezoid with corners
chopped off. This script recovers that decomposition and then walks a
continuous path between two polygons.
"""

from fractions import Fraction

from toric_moduli import (
    DelzantPolygon,
    LatticeAffineMap,
    Point,
    apply_map,
    canonicalize,
    connect,
    continuity_modulus,
    corner_chop,
    delzant_triangle,
    hirzebruch,
    sample,
)

H = hirzebruch(3, 2, 1)
P = corner_chop(corner_chop(H, 0, Fraction(1, 2)), 2, Fraction(1, 3))
# hide it behind a shear and a translation
P = DelzantPolygon.from_polygon(apply_map(LatticeAffineMap(1, 2, 0, 1, Point(4, -1)), P))
print("input vertices:", ", ".join(f"({v.x}, {v.y})" for v in P.vertices))

dec = canonicalize(P)
print("base:", dec.base)
for v, e in dec.chops:
    print(f"  chop at ({v.x}, {v.y}) size {e}")
assert apply_map(dec.witness, P) == dec.replay()

path = connect(P, delzant_triangle(1))
print(f"\npath with {len(path.moves)} moves")
for m in path.moves:
    print("  ", type(m).__name__)
for j in range(5):
    t = Fraction(j, 4)
    print(f"t = {t}: {len(sample(path, t))} vertices")
print("modulus at N = 16:", continuity_modulus(path, 16))
