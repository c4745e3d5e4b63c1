"""
A Cauchy sequence with no limit, and balls without compactness
==============================================================

Hirzebruch trapezoids whose top edge shrinks form a Cauchy sequence whose
limit is a triangle with a non-smooth corner. The family Q_delta keeps
a fixed distance from the square while staying within any small ball.
"""

from fractions import Fraction

from toric_moduli import Polygon, cauchy_limit, cauchy_sequence, sym_diff_distance, validate
from toric_moduli.moduli import q_delta, q_delta_size

c, b, k = 1, 1, 2
terms = [cauchy_sequence(c, b, k, n) for n in (1, 2, 4, 8, 16)]
for n, (X, Y) in zip((1, 2, 4, 8), zip(terms, terms[1:])):
    print(f"d(H_{n}, H_{2 * n}) = {sym_diff_distance(X, Y)}")
L = cauchy_limit(c, b, k)
rep = validate(L)
print("limit delzant:", rep.is_delzant, "non-smooth:", rep.non_smooth_vertices)
print("d(H_16, limit) =", sym_diff_distance(terms[-1], L))

eps = 0.1
delta = q_delta_size(eps)
Q = q_delta(eps)
print(f"\nQ_delta for eps = {eps}: delta = {delta:.5f}, vertices {Q.vertices.round(5).tolist()}")
# a rational stand-in with the same shape is never smooth at the cut
half = Fraction(1, 2)
R = Polygon([(0, -half), (1, -half), (Fraction(9, 10), half), (0, half)])
print("rational stand-in, delta = 1/10:", validate(R).non_smooth_vertices)
