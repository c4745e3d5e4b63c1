from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_delzant, random_hirzebruch_params, random_map, rng_for
from toric_moduli.delzant import (
    DelzantPolygon,
    chop_halfplane,
    congruence_fingerprint,
    congruent,
    corner_chop,
    delzant_triangle,
    edge_slide,
    hirzebruch,
    rational_length,
    slide_interval,
    validate,
    vertex_frames,
)
from toric_moduli.errors import (
    ChopTooLarge,
    ConstraintViolation,
    NonPositiveParameter,
    NotDelzant,
    SlideOutOfRange,
    ZeroSegment,
)
from toric_moduli.geometry import LatticeAffineMap, Point, Polygon, apply_map, area, clip, rectangle, sym_diff_distance

F = Fraction
D1 = delzant_triangle(1)
D2 = delzant_triangle(2)
SQ = hirzebruch(1, 1, 0)


def test_validate_examples():
    assert validate(D1).is_delzant
    L = Polygon([(0, F(-1, 2)), (2, F(-1, 2)), (0, F(1, 2))])
    rep = validate(L)
    assert not rep.is_delzant and rep.is_rational
    assert rep.non_smooth_vertices == [(L.index_of((0, F(1, 2))), 2)]
    rep = validate(hirzebruch(3, 2, 1))
    assert rep.is_delzant and rep.determinants == [1, 1, 1, 1]


def test_validate_non_smooth_rational_triangle():
    P = Polygon([(0, 0), (1, 0), (0, 1)])
    assert validate(P).is_rational
    # rational vertices always give rational directions; non-smooth is the only failure mode here
    Q = Polygon([(0, 0), (3, 1), (0, 1)])
    assert validate(Q).is_rational and not validate(Q).is_delzant


def test_delzant_polygon_rejects_non_smooth():
    with pytest.raises(NotDelzant):
        DelzantPolygon([(0, 0), (2, 0), (0, 1)])


def test_triangle_and_hirzebruch_constructors():
    assert D1.vertices == (Point(0, 0), Point(1, 0), Point(0, 1))
    assert area(D2) == 2
    assert SQ == rectangle(0, F(-1, 2), 1, F(1, 2))
    assert set(hirzebruch(3, 2, 1).vertices) == {Point(0, -1), Point(0, 1), Point(2, 1), Point(4, -1)}
    with pytest.raises(ConstraintViolation):
        hirzebruch(1, 2, 0)
    with pytest.raises(ConstraintViolation):
        hirzebruch(2, 1, 4)  # a - k b / 2 = 0
    with pytest.raises(NonPositiveParameter):
        delzant_triangle(0)


@given(st.integers(0, 10**6))
def test_hirzebruch_always_smooth(seed):
    a, b, k = random_hirzebruch_params(rng_for(seed))
    H = hirzebruch(a, b, k)
    rep = validate(H)
    assert rep.is_delzant
    assert area(H) == a * b


def test_rational_length_examples():
    assert rational_length((0, 0), (3, 0)) == 3
    assert rational_length((0, 0), (2, 2)) == 2
    assert rational_length((1, 1), (1, F(5, 2))) == F(3, 2)
    assert rational_length((0, 0), (F(1, 2), F(1, 3))) == F(1, 6)
    with pytest.raises(ZeroSegment):
        rational_length((1, 1), (1, 1))


def test_rational_length_rejects_floats():
    # float coordinates never enter the exact kernel
    with pytest.raises(TypeError):
        rational_length((0.0, 0.0), (1.0, 2**0.5))


@given(st.integers(0, 10**6))
def test_rational_length_invariant(seed):
    rng = rng_for(seed)
    m = random_map(rng)
    p = Point(F(rng.randint(-9, 9), 4), F(rng.randint(-9, 9), 3))
    q = p + Point(rng.randint(-5, 5) or 1, rng.randint(-5, 5)) * F(rng.randint(1, 9), 7)
    assert rational_length(m(p), m(q)) == rational_length(p, q)


# ---------------------------------------------------------------- chopping


def test_chop_examples():
    C = corner_chop(D1, 0, F(1, 4))
    assert C == Polygon([(F(1, 4), 0), (1, 0), (0, 1), (0, F(1, 4))])
    assert validate(C).is_delzant
    with pytest.raises(ChopTooLarge):
        corner_chop(D1, 0, 1)
    with pytest.raises(NonPositiveParameter):
        corner_chop(D1, 0, 0)


def test_chop_accepts_vertex_point():
    assert corner_chop(D1, Point(0, 0), F(1, 4)) == corner_chop(D1, 0, F(1, 4))


@settings(max_examples=80)
@given(st.integers(0, 10**6), st.integers(1, 15))
def test_chop_law_and_clip_oracle(seed, num):
    rng = rng_for(seed)
    P = random_delzant(rng, 3)
    frames = vertex_frames(P)
    i = rng.randrange(len(frames))
    f = frames[i]
    eps = min(f.len1, f.len2) * F(num, 16)
    C = corner_chop(P, i, eps)
    assert validate(C).is_delzant
    assert area(P) - area(C) == eps * eps / 2
    assert sym_diff_distance(P, C) == eps * eps / 2
    # independent construction by clipping with the chop half-plane
    assert clip(P, chop_halfplane(f, eps)) == C


def test_chopped_vertices_have_det_one():
    C = corner_chop(hirzebruch(3, 2, 1), 1, F(1, 2))
    assert all(f.det == 1 for f in vertex_frames(C))


# ---------------------------------------------------------------- edge slides


def top_edge(P):
    return next(i for i, (a, b) in enumerate(P.edges()) if a.y == b.y == max(v.y for v in P.vertices))


def test_slide_examples():
    e = top_edge(SQ)
    R = edge_slide(SQ, e, F(1, 2))
    assert R == rectangle(0, F(-1, 2), 1, 0)
    assert validate(R).is_delzant
    assert edge_slide(edge_slide(SQ, e, F(1, 3)), top_edge(SQ), F(-1, 3)) == SQ
    with pytest.raises(SlideOutOfRange) as exc:
        edge_slide(SQ, e, 1)
    assert exc.value.interval == (None, 1)


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_slide_inverse(seed):
    rng = rng_for(seed)
    P = random_delzant(rng, 2)
    e = rng.randrange(len(P))
    lo, hi = slide_interval(P, e)
    hi = F(1) if hi is None else hi
    t = hi * F(rng.randint(1, 7), 8)
    R = edge_slide(P, e, t)
    assert validate(R).is_delzant
    # the moved edge keeps its index only when no vertex order changes; find it by its supporting line
    back = [edge_slide(R, j, -t) for j in range(len(R)) if _same_direction(R, j, P, e)]
    assert P in back


def _same_direction(R, j, P, e):
    a, b = R.edges()[j]
    c, d = P.edges()[e]
    return (b - a).cross(d - c) == 0 and (b - a).dot(d - c) > 0


# ---------------------------------------------------------------- congruence


def test_congruence_examples():
    P = hirzebruch(3, 2, 1)
    m = LatticeAffineMap(1, 1, 0, 1, Point(5, 7))
    Q = DelzantPolygon.from_polygon(apply_map(m, P))
    w = congruent(P, Q)
    assert w is not None and apply_map(w, P) == Q
    assert congruent(D1, D2) is None
    assert congruent(D1, SQ) is None


def test_fingerprint_examples():
    assert congruence_fingerprint(D2) == (3, 2, (2, 2, 2))
    assert congruence_fingerprint(SQ) == (4, 1, (1, 1, 1, 1))


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_congruence_is_an_equivalence(seed):
    rng = rng_for(seed)
    P = random_delzant(rng, 3)
    m1, m2 = random_map(rng), random_map(rng)
    Q = DelzantPolygon.from_polygon(apply_map(m1, P))
    R = DelzantPolygon.from_polygon(apply_map(m2, Q))
    assert congruence_fingerprint(P) == congruence_fingerprint(Q) == congruence_fingerprint(R)
    assert apply_map(congruent(P, P), P) == P
    w = congruent(P, Q)
    assert apply_map(w, P) == Q
    assert apply_map(w.inverse(), Q) == P
    v = congruent(Q, R)
    assert apply_map(v.compose(w), P) == R


@given(st.integers(0, 10**6))
def test_non_congruent_chops_detected(seed):
    rng = rng_for(seed)
    P = random_delzant(rng, 2)
    f = vertex_frames(P)[0]
    Q = corner_chop(P, 0, min(f.len1, f.len2) / 3)
    assert congruent(P, Q) is None
