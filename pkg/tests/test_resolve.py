import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_delzant, rng_for
from toric_moduli.delzant import DelzantPolygon, delzant_triangle, hirzebruch, validate
from toric_moduli.errors import DefectOne, EpsilonTooLarge, IrrationalEdge, ToleranceUnachievable
from toric_moduli.geometry import FloatPolygon, Point, Polygon, area, float_sym_diff, intersect, sym_diff_distance
from toric_moduli.montecarlo import estimate_sym_diff
from toric_moduli.resolve import (
    SupportOracle,
    continued_fraction,
    convergents,
    delzant_approximate,
    inner_polygon,
    rationalize,
    resolve_vertex,
    smooth,
    solve_alpha0,
    vertex_defect,
)

F = Fraction
LIMIT = Polygon([(0, F(-1, 2)), (2, F(-1, 2)), (0, F(1, 2))])
SQRT2 = FloatPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, math.sqrt(2)), (0.0, 0.5)])


def brute_alpha0(u, v):
    a1 = int(abs(u.cross(v)))
    return [x for x in range(a1) if (u.x * x - v.x) % a1 == 0 and (u.y * x - v.y) % a1 == 0]


def check_resolution(P, i, eps):
    p = P.vertices[i]
    R, tr = resolve_vertex(P, i, eps)
    assert intersect(P, R) == R  # R inside P
    # unchanged away from the ball
    far = [q for q in P.vertices if q != p]
    assert all(q in R.vertices for q in far)
    assert all((q - p).norm2() < eps * eps for q in R.vertices if q not in far)
    # the replaced corner is smooth
    assert all(vertex_defect(R, R.index_of(q)) == 1 for q in R.vertices if q not in far)
    d = vertex_defect(P, i)
    assert tr.new_edges <= d - 1
    assert len(R) == len(P) + tr.new_edges
    seq = tr.alpha_sequence
    assert seq[0] == d and seq[-1] == 1 and all(x > y for x, y in zip(seq, seq[1:]))
    assert all(m.det() in (1, -1) for m in tr.applied_maps)
    return R, tr


def test_vertex_defect_examples():
    assert vertex_defect(delzant_triangle(1), 0) == 1
    T = Polygon([(0, 0), (1, 0), (0, 2)])
    assert vertex_defect(T, T.index_of((1, 0))) == 2
    assert vertex_defect(LIMIT, LIMIT.index_of((0, F(1, 2)))) == 2
    with pytest.raises(IrrationalEdge):
        vertex_defect(SQRT2, 0)


def test_alpha0_example_and_brute_force():
    assert solve_alpha0(Point(-1, 0), Point(-1, 2)) == (1, 2)
    for u, v in [(Point(1, 0), Point(3, 5)), (Point(2, 1), Point(-1, 3)), (Point(-1, 0), Point(-2, 7))]:
        a0, a1 = solve_alpha0(u, v)
        assert a1 == abs(u.cross(v))
        assert brute_alpha0(u, v) == [a0]


def test_resolve_example():
    T = Polygon([(0, 0), (1, 0), (0, 2)])
    R, tr = check_resolution(T, T.index_of((1, 0)), F(1, 8))
    assert len(R) == 4 and tr.new_edges == 1
    assert validate(R).is_delzant


def test_resolve_defect_five():
    T = Polygon([(0, 0), (1, 0), (0, 5)])
    i = T.index_of((1, 0))
    assert vertex_defect(T, i) == 5
    R, tr = check_resolution(T, i, F(1, 16))
    assert tr.new_edges <= 4


CONES = [(s, d) for d in (2, 3, 5, 7, 12) for s in (1, 2, 3) if math.gcd(s, d) == 1]


@pytest.mark.parametrize("s,d", CONES)
def test_resolve_sheared_cones(s, d):
    # cone with directions (1, 0) and (s, d) at the origin, closed off far away
    P = Polygon([(0, 0), (d * 4, 0), (s * 4, d * 4)])
    check_resolution(P, 0, F(1, 4))


def test_resolve_rejects_smooth_and_large_eps():
    with pytest.raises(DefectOne):
        resolve_vertex(delzant_triangle(1), 0, F(1, 8))
    with pytest.raises(EpsilonTooLarge):
        resolve_vertex(LIMIT, LIMIT.index_of((0, F(1, 2))), 2)


def test_smooth_examples():
    D = delzant_triangle(1)
    assert smooth(D, F(1, 8)) == D
    R, rep = smooth(LIMIT, F(1, 16), report=True)
    assert validate(R).is_delzant
    assert len(R) - len(LIMIT) <= 1
    assert sym_diff_distance(LIMIT, R) == rep.loss <= rep.loss_bound
    Q = Polygon([(0, 0), (1, 0), (2, 2), (0, 2)])
    assert sorted(vertex_defect(Q, i) for i in range(4)) == [1, 1, 2, 2]
    R, rep = smooth(Q, F(1, 8), report=True)
    assert validate(R).is_delzant and rep.added_edges <= 2 == rep.edge_bound


def test_smooth_loss_decreases():
    losses = [sym_diff_distance(LIMIT, smooth(LIMIT, F(1, 2**k))) for k in range(3, 11)]
    assert all(a > b for a, b in zip(losses, losses[1:]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_smooth_random_lattice_triangles(seed):
    rng = rng_for(seed)
    while True:
        pts = [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(3)]
        try:
            P = Polygon(pts)
            break
        except Exception:
            continue
    R, rep = smooth(P, F(1, 4), report=True)
    assert validate(R).is_delzant
    assert intersect(P, R) == R
    assert rep.added_edges <= rep.edge_bound
    assert rep.loss == area(P) - area(R) <= rep.loss_bound


def test_smooth_rejects_large_eps():
    with pytest.raises(EpsilonTooLarge):
        smooth(LIMIT, 1)


# ---------------------------------------------------------------- rationalize


def test_continued_fraction_and_convergents():
    assert continued_fraction(F(415, 93)) == [4, 2, 6, 7]
    assert convergents([4, 2, 6, 7])[-1] == F(415, 93)
    cs = convergents(continued_fraction(F(math.sqrt(2)), 8))
    assert cs[:5] == [1, F(3, 2), F(7, 5), F(17, 12), F(41, 29)]


def test_rationalize_exact_input():
    S = FloatPolygon([(0.0, -0.5), (1.0, -0.5), (1.0, 0.5), (0.0, 0.5)])
    assert rationalize(S, 1e-6) == hirzebruch(1, 1, 0)


def test_rationalize_sqrt2():
    prev = math.inf
    for eps in (1e-1, 1e-2, 1e-3):
        R = rationalize(SQRT2, eps)
        d = float_sym_diff(SQRT2, R)
        assert d <= eps and d <= prev and len(R) == 4
        prev = d
    est = estimate_sym_diff(SQRT2, R, samples=10**6, seed=4)
    assert est.upper() < 1e-3


def test_rationalize_impossible():
    with pytest.raises(ToleranceUnachievable):
        rationalize(SQRT2, 1e-30, max_depth=8)


# ---------------------------------------------------------------- inner polygons


def test_inner_polygon_disc():
    disc = SupportOracle.disc()
    assert disc.check_sublinear()
    ip = inner_polygon(disc, 0.05, details=True)
    # circumscribed 2048-gon area is an upper bound for pi
    assert math.pi <= disc.outer_area() < math.pi + 1e-5
    assert ip.polygon.area() >= math.pi - 0.05
    assert ip.gap_bound <= 0.05
    r = np.hypot(*ip.polygon.vertices.T)
    assert np.all(r <= 1 + 1e-12)


def test_inner_polygon_refinement():
    disc = SupportOracle.disc()
    counts = []
    for eps in (0.4, 0.2, 0.1, 0.05, 0.025):
        ip = inner_polygon(disc, eps, details=True)
        assert ip.gap_bound <= eps
        counts.append(len(ip.polygon))
    assert counts == sorted(counts)


def test_inner_polygon_square_fixed_point():
    sq = SupportOracle.from_polygon(hirzebruch(1, 1, 0))
    P = inner_polygon(sq, 1e-9)
    assert float_sym_diff(P, FloatPolygon.from_polygon(hirzebruch(1, 1, 0))) < 1e-12


# ---------------------------------------------------------------- composition


def test_approximate_disc():
    A = delzant_approximate(SupportOracle.disc(), 0.05, seed=1)
    assert validate(A.polygon).is_delzant
    assert A.estimate.upper() <= 0.05
    # circular-segment oracle: the polygon sits inside the disc, so d = pi - area
    assert abs(A.estimate.value - (math.pi - float(area(A.polygon)))) <= 4 * A.estimate.stderr + 1e-4


def test_approximate_identity():
    P = random_delzant(rng_for(3))
    A = delzant_approximate(P, 0.01)
    assert A.polygon == P and all(s.estimate == 0 for s in A.stages)


def test_approximate_sqrt2_triangle():
    T = FloatPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, math.sqrt(2))])
    A = delzant_approximate(T, 1e-2, seed=2)
    assert validate(A.polygon).is_delzant
    assert A.estimate.upper() <= 1e-2
    assert float_sym_diff(T, A.polygon) <= 1e-2


def test_density_chain_is_cauchy_like():
    disc = SupportOracle.disc()
    polys = [delzant_approximate(disc, eps, samples=10**5).polygon for eps in (0.2, 0.1, 0.05, 0.025)]
    gaps = [float(sym_diff_distance(a, b)) for a, b in zip(polys, polys[1:])]
    assert all(x > y for x, y in zip(gaps, gaps[1:]))
    assert all(isinstance(P, DelzantPolygon) for P in polys)
