"""Delzant polygons: validation, standard shapes, chopping, sliding, congruence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    ChopTooLarge,
    ConstraintViolation,
    ConvexityBroken,
    NonPositiveParameter,
    NotDelzant,
    SlideOutOfRange,
    ZeroSegment,
)
from .geometry import (
    HalfPlane,
    LatticeAffineMap,
    Point,
    Polygon,
    apply_map,
    area,
    as_point,
    as_rat,
    primitive_direction,
)


def rational_length(p, q) -> Fraction:
    """Lattice length of the segment ``[p, q]``: ``q - p = len * u`` with ``u`` primitive."""
    d = as_point(q) - as_point(p)
    if d.x == 0 and d.y == 0:
        raise ZeroSegment("segment has coincident endpoints")
    u = primitive_direction(d)
    return d.x / u.x if u.x != 0 else d.y / u.y


@dataclass(frozen=True)
class VertexFrame:
    """Primitive edge directions at a vertex, counterclockwise (``u1`` toward the next vertex)."""

    vertex: Point
    u1: Point
    u2: Point
    det: int
    len1: Fraction
    len2: Fraction


def vertex_frames(P: Polygon) -> list[VertexFrame]:
    vs = P.vertices
    n = len(vs)
    frames = []
    for i, v in enumerate(vs):
        nxt, prv = vs[(i + 1) % n], vs[i - 1]
        u1 = primitive_direction(nxt - v)
        u2 = primitive_direction(prv - v)
        frames.append(
            VertexFrame(v, u1, u2, int(u1.cross(u2)), rational_length(v, nxt), rational_length(v, prv))
        )
    return frames


@dataclass(frozen=True)
class DelzantReport:
    is_rational: bool
    determinants: list[int]
    non_smooth_vertices: list[tuple[int, int]] = field(default_factory=list)
    is_delzant: bool = False


def validate(P: Polygon) -> DelzantReport:
    """Check smoothness at every vertex.

    Simplicity holds for any vertex cycle in the plane and rationality for
    any polygon with rational vertices, so only the determinants of the
    primitive edge directions carry information.
    """
    frames = vertex_frames(P)
    dets = [f.det for f in frames]
    bad = [(i, abs(d)) for i, d in enumerate(dets) if abs(d) != 1]
    return DelzantReport(True, dets, bad, not bad)


class DelzantPolygon(Polygon):
    """A polygon certified simple, rational and smooth."""

    __slots__ = ("_frames",)

    def __init__(self, vertices: Iterable, *, check: bool = True):
        super().__init__(vertices, check=check)
        frames = vertex_frames(self)
        bad = [(i, abs(f.det)) for i, f in enumerate(frames) if f.det != 1]
        if bad:
            raise NotDelzant(f"non-smooth vertices (index, |det|): {bad}")
        self._frames = tuple(frames)

    @classmethod
    def from_polygon(cls, P: Polygon) -> DelzantPolygon:
        if isinstance(P, DelzantPolygon):
            return P
        return cls(P.vertices, check=False)

    @property
    def polygon(self) -> Polygon:
        return Polygon(self.vertices, check=False)

    @property
    def frames(self) -> tuple[VertexFrame, ...]:
        return self._frames

    def edge_lengths(self) -> list[Fraction]:
        return [f.len1 for f in self._frames]


def delzant_triangle(lam) -> DelzantPolygon:
    lam = as_rat(lam)
    if lam <= 0:
        raise NonPositiveParameter(f"lambda must be positive, got {lam}")
    return DelzantPolygon([(0, 0), (lam, 0), (0, lam)], check=False)


def check_hirzebruch(a, b, k, *, require_wide: bool = True) -> tuple[Fraction, Fraction, int]:
    a, b = as_rat(a), as_rat(b)
    if isinstance(k, Fraction):
        if k.denominator != 1:
            raise ConstraintViolation(f"k must be an integer, got {k}")
        k = int(k)
    if not isinstance(k, int) or k < 0:
        raise ConstraintViolation(f"k must be a non-negative integer, got {k}")
    if b <= 0:
        raise ConstraintViolation(f"b > 0 fails (b = {b})")
    if require_wide and a < b:
        raise ConstraintViolation(f"a >= b fails (a = {a}, b = {b})")
    if a - k * b / 2 <= 0:
        raise ConstraintViolation(f"a - k*b/2 > 0 fails (a = {a}, b = {b}, k = {k})")
    return a, b, k


def hirzebruch(a, b, k: int, *, require_wide: bool = True) -> DelzantPolygon:
    """Trapezoid ``-b/2 <= y <= b/2, 0 <= x <= a - k*y``.

    ``require_wide=False`` drops the conventional ``a >= b``; the shape is
    Delzant either way.
    """
    a, b, k = check_hirzebruch(a, b, k, require_wide=require_wide)
    h = b / 2
    return DelzantPolygon([(0, -h), (a + k * h, -h), (a - k * h, h), (0, h)], check=False)


def _vertex_index(P: Polygon, v) -> int:
    if isinstance(v, int):
        if not 0 <= v < len(P):
            raise IndexError(f"vertex index {v} out of range")
        return v
    return P.index_of(v)


def chop_halfplane(frame: VertexFrame, eps) -> HalfPlane:
    """``{v + t1*u1 + t2*u2 : t1 + t2 >= eps}`` as an integer half-plane."""
    u1, u2 = frame.u1, frame.u2
    d = u1.cross(u2)
    normal = Point((u2.y - u1.y) / d, (u1.x - u2.x) / d)
    hp = HalfPlane.through(frame.vertex, normal)
    return hp.shifted(as_rat(eps))


def corner_chop(P: DelzantPolygon, v, eps) -> DelzantPolygon:
    """Corner chopping of size ``eps`` at vertex ``v`` (index or point).

    The corner is replaced by the two points at lattice distance ``eps``
    along the incident edges; the cut-off simplex has area ``eps**2 / 2``.
    """
    P = DelzantPolygon.from_polygon(P)
    eps = as_rat(eps)
    i = _vertex_index(P, v)
    f = P.frames[i]
    if eps <= 0:
        raise NonPositiveParameter(f"chop size must be positive, got {eps}")
    if eps >= f.len1 or eps >= f.len2:
        raise ChopTooLarge(f"size {eps} is not below the incident edge lengths {f.len2}, {f.len1}")
    vs = list(P.vertices)
    vs[i : i + 1] = [f.vertex + f.u2 * eps, f.vertex + f.u1 * eps]
    try:
        out = DelzantPolygon(vs)
    except Exception as exc:  # pragma: no cover - unreachable for eps below both lengths
        raise ConvexityBroken(str(exc)) from exc
    if len(out) != len(P) + 1:  # pragma: no cover
        raise ConvexityBroken("chop did not add exactly one vertex")
    return out


def slide_interval(P: Polygon, e: int) -> tuple[Fraction | None, Fraction | None]:
    """Open interval of offsets ``t`` for which :func:`edge_slide` keeps the combinatorics."""
    vs = P.vertices
    n = len(vs)
    e %= n
    a, b = vs[e], vs[(e + 1) % n]
    d_prev = a - vs[e - 1]
    d_next = vs[(e + 2) % n] - b
    d_e = b - a
    hp = HalfPlane.through(a, Point(-d_e.y, d_e.x))
    nv = Point(*hp.normal)
    np_, nn = nv.dot(d_prev), nv.dot(d_next)
    w = d_next / nn - d_prev / np_
    # each constraint reads alpha + beta * t > 0
    constraints = [(Fraction(1), 1 / np_), (Fraction(1), -1 / nn), (Fraction(1), w.dot(d_e) / d_e.norm2())]
    lo: Fraction | None = None
    hi: Fraction | None = None
    for alpha, beta in constraints:
        if beta > 0:
            bound = -alpha / beta
            lo = bound if lo is None else max(lo, bound)
        elif beta < 0:
            bound = -alpha / beta
            hi = bound if hi is None else min(hi, bound)
    return lo, hi


def edge_slide(P: DelzantPolygon, e: int, t) -> DelzantPolygon:
    """Move edge ``e`` (from vertex ``e`` to ``e+1``) parallel to itself, inward by ``t``.

    ``t`` is measured in the offset of the edge's primitive inward normal.
    """
    P = DelzantPolygon.from_polygon(P)
    t = as_rat(t)
    n = len(P)
    e %= n
    lo, hi = slide_interval(P, e)
    if (lo is not None and t <= lo) or (hi is not None and t >= hi):
        raise SlideOutOfRange(f"offset {t} outside the admissible interval ({lo}, {hi})", (lo, hi))
    if t == 0:
        return P
    vs = list(P.vertices)
    a, b = vs[e], vs[(e + 1) % n]
    d_prev = a - vs[e - 1]
    d_next = vs[(e + 2) % n] - b
    d_e = b - a
    nv = Point(*HalfPlane.through(a, Point(-d_e.y, d_e.x)).normal)
    vs[e] = a + d_prev * (t / nv.dot(d_prev))
    vs[(e + 1) % n] = b + d_next * (t / nv.dot(d_next))
    return DelzantPolygon(vs, check=False)


def _least_rotation(seq: tuple) -> tuple:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def congruence_fingerprint(P: DelzantPolygon) -> tuple:
    """``(edge count, area, canonical cyclic sequence of rational edge lengths)``.

    The sequence is minimised over rotations and reversal, since an
    orientation-reversing lattice map reverses the cyclic order.
    """
    P = DelzantPolygon.from_polygon(P)
    lens = tuple(P.edge_lengths())
    seq = min(_least_rotation(lens), _least_rotation(lens[::-1]))
    return (len(P), area(P), seq)


def frame_map(src: tuple[Point, Point, Point], dst: tuple[Point, Point, Point]) -> LatticeAffineMap | None:
    """Affine map sending vertex/direction triple ``src`` onto ``dst``, if it is lattice."""
    p, s1, s2 = src
    q, t1, t2 = dst
    d = s1.cross(s2)
    if d == 0:
        return None
    # A = T * S^-1 with S = [s1 s2], T = [t1 t2]
    inv = ((s2.y / d, -s2.x / d), (-s1.y / d, s1.x / d))
    m = [
        [t1.x * inv[0][0] + t2.x * inv[1][0], t1.x * inv[0][1] + t2.x * inv[1][1]],
        [t1.y * inv[0][0] + t2.y * inv[1][0], t1.y * inv[0][1] + t2.y * inv[1][1]],
    ]
    if any(x.denominator != 1 for row in m for x in row):
        return None
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det not in (1, -1):
        return None
    lin = LatticeAffineMap(int(m[0][0]), int(m[0][1]), int(m[1][0]), int(m[1][1]))
    return LatticeAffineMap(lin.a11, lin.a12, lin.a21, lin.a22, q - lin.linear(p))


def congruent(P: DelzantPolygon, Q: DelzantPolygon) -> LatticeAffineMap | None:
    """A lattice affine map sending ``P`` onto ``Q``, or ``None``."""
    P = DelzantPolygon.from_polygon(P)
    Q = DelzantPolygon.from_polygon(Q)
    if congruence_fingerprint(P) != congruence_fingerprint(Q):
        return None
    f = P.frames[0]
    for g in Q.frames:
        for t1, t2 in ((g.u1, g.u2), (g.u2, g.u1)):
            m = frame_map((f.vertex, f.u1, f.u2), (g.vertex, t1, t2))
            if m is not None and apply_map(m, P) == Q:
                return m
    return None
