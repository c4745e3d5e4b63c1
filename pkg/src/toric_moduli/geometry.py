"""Exact rational plane geometry for convex polygons.

Coordinates are :class:`fractions.Fraction` throughout; nothing in this
module rounds.  The float-valued :class:`FloatPolygon` exists for bodies
with irrational data (discs, irrational slopes) and carries a 1e-9
convexity tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateHull, InvalidPolygon, ZeroVector

FLOAT_TOL = 1e-9


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: silently converting them would smuggle binary
    rounding into the exact kernel.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, (bool, float)):
        raise TypeError(f"exact coordinate expected, got {type(value).__name__}")
    return Fraction(value)


@dataclass(frozen=True, order=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if type(self.x) is not Fraction:
            object.__setattr__(self, "x", as_rat(self.x))
        if type(self.y) is not Fraction:
            object.__setattr__(self, "y", as_rat(self.y))

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def __mul__(self, s) -> Point:
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> Point:
        return Point(self.x / s, self.y / s)

    def dot(self, other: Point) -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point) -> Fraction:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def is_lattice(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def as_float(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


Vec = Point


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    x, y = p
    return Point(x, y)


def cross3(o, a, b):
    """Twice the signed area of triangle (o, a, b); works on any numeric pairs."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _xy(p):
    return (p.x, p.y) if isinstance(p, Point) else (p[0], p[1])


def _winding(points) -> int:
    # number of times the edge direction crosses from the upper to the lower half-plane
    n = len(points)
    dirs = [(points[(i + 1) % n][0] - points[i][0], points[(i + 1) % n][1] - points[i][1]) for i in range(n)]
    upper = [dy > 0 or (dy == 0 and dx > 0) for dx, dy in dirs]
    return sum(1 for i in range(n) if upper[i] and not upper[(i + 1) % n])


class Polygon:
    """Strictly convex polygon with exact rational vertices.

    Vertices are stored counterclockwise, starting at the lexicographically
    smallest one, so two polygons are equal as sets iff their vertex tuples
    are equal.  Clockwise input is reversed.
    """

    __slots__ = ("vertices", "_hash")

    def __init__(self, vertices: Iterable, *, check: bool = True):
        pts = [as_point(v) for v in vertices]
        if check:
            pts = _checked_ccw(pts)
        k = min(range(len(pts)), key=pts.__getitem__)
        self.vertices: tuple[Point, ...] = tuple(pts[k:] + pts[:k])
        self._hash = None

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i) -> Point:
        return self.vertices[i % len(self.vertices)]

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.vertices)
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"({v.x}, {v.y})" for v in self.vertices)
        return f"{type(self).__name__}([{inner}])"

    def edges(self) -> list[tuple[Point, Point]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edge_vectors(self) -> list[Vec]:
        return [b - a for a, b in self.edges()]

    def index_of(self, p) -> int:
        p = as_point(p)
        try:
            return self.vertices.index(p)
        except ValueError:
            raise KeyError(f"{p} is not a vertex") from None

    def contains(self, p, strict: bool = False) -> bool:
        p = as_point(p)
        for a, b in self.edges():
            c = (b - a).cross(p - a)
            if c < 0 or (strict and c == 0):
                return False
        return True

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def float_vertices(self) -> np.ndarray:
        return np.array([v.as_float() for v in self.vertices], dtype=float)

    def translate(self, v) -> Polygon:
        v = as_point(v)
        return type(self)([p + v for p in self.vertices])

    def scale(self, s) -> Polygon:
        s = as_rat(s)
        if s <= 0:
            raise ValueError("scale factor must be positive")
        return type(self)([p * s for p in self.vertices])


def _checked_ccw(pts: list[Point]) -> list[Point]:
    n = len(pts)
    if n < 3:
        raise InvalidPolygon(f"a polygon needs at least 3 vertices, got {n}")
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise InvalidPolygon(f"vertex {i} repeats vertex {seen[p]}", index=i)
        seen[p] = i
    signed = sum(pts[i].cross(pts[(i + 1) % n]) for i in range(n))
    if signed == 0:
        raise InvalidPolygon("polygon has zero area")
    order = list(range(n)) if signed > 0 else list(range(n - 1, -1, -1))
    ccw = [pts[i] for i in order]
    for j in range(n):
        c = cross3(_xy(ccw[j - 1]), _xy(ccw[j]), _xy(ccw[(j + 1) % n]))
        if c <= 0:
            kind = "collinear" if c == 0 else "reflex"
            raise InvalidPolygon(f"vertex {order[j]} is {kind}", index=order[j])
    if _winding([_xy(p) for p in ccw]) != 1:
        raise InvalidPolygon("vertex cycle winds more than once")
    return ccw


def convex_hull(points: Iterable) -> Polygon:
    """Convex hull by Andrew's monotone chain; collinear boundary points are dropped."""
    pts = sorted({as_point(p) for p in points})
    if len(pts) < 3:
        raise DegenerateHull("fewer than 3 distinct points")
    hull = _monotone_chain([(p.x, p.y) for p in pts])
    if len(hull) < 3:
        raise DegenerateHull("all points are collinear")
    return Polygon([Point(x, y) for x, y in hull], check=False)


def _monotone_chain(pts: Sequence) -> list:
    # pts sorted lexicographically and distinct
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross3(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross3(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def area(P: Polygon) -> Fraction:
    vs = P.vertices
    n = len(vs)
    return sum((vs[i].cross(vs[(i + 1) % n]) for i in range(n)), Fraction(0)) / 2


def primitive(v) -> tuple[Vec, int]:
    """Split an integer vector as ``k * u`` with ``u`` primitive and ``k > 0``."""
    v = as_point(v)
    if not v.is_lattice():
        raise ValueError(f"{v} is not an integer vector")
    a, b = int(v.x), int(v.y)
    k = gcd(a, b)
    if k == 0:
        raise ZeroVector("the zero vector has no primitive direction")
    return Point(a // k, b // k), k


def primitive_direction(v) -> Vec:
    """Primitive integer vector positively proportional to a rational vector."""
    v = as_point(v)
    if v.x == 0 and v.y == 0:
        raise ZeroVector("the zero vector has no direction")
    m = v.x.denominator * v.y.denominator // gcd(v.x.denominator, v.y.denominator)
    return primitive(v * m)[0]


@dataclass(frozen=True, slots=True)
class HalfPlane:
    """The closed half-plane ``<normal, x> >= offset`` with a primitive integer normal."""

    normal: tuple[int, int]
    offset: Fraction

    def __post_init__(self):
        a, b = self.normal
        if (a, b) == (0, 0):
            raise ZeroVector("half-plane normal is zero")
        if gcd(a, b) != 1:
            raise ValueError(f"normal {self.normal} is not primitive")
        object.__setattr__(self, "offset", as_rat(self.offset))

    @classmethod
    def through(cls, point, normal) -> HalfPlane:
        """Half-plane whose boundary passes through ``point``, inward ``normal`` (rational)."""
        n = primitive_direction(normal)
        p = as_point(point)
        return cls((int(n.x), int(n.y)), n.dot(p))

    def value(self, p: Point) -> Fraction:
        return self.normal[0] * p.x + self.normal[1] * p.y - self.offset

    def contains(self, p) -> bool:
        return self.value(as_point(p)) >= 0

    def shifted(self, t) -> HalfPlane:
        return HalfPlane(self.normal, self.offset + as_rat(t))


def h_rep(P: Polygon) -> list[HalfPlane]:
    """One inward half-plane per edge, in edge order (edge i runs from vertex i to i+1)."""
    if isinstance(P, FloatPolygon):
        return P.h_rep()
    return [HalfPlane.through(a, Point(a.y - b.y, b.x - a.x)) for a, b in P.edges()]


def _clean_cycle(pts: list[Point]) -> list[Point] | None:
    out: list[Point] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            if cross3(_xy(out[i - 1]), _xy(out[i]), _xy(out[(i + 1) % n])) == 0:
                del out[i]
                changed = True
                break
    return out if len(out) >= 3 else None


def clip(P: Polygon, H: HalfPlane) -> Polygon | None:
    """``P`` intersected with ``H``; ``None`` when the intersection has no area."""
    vs = P.vertices
    vals = [H.value(v) for v in vs]
    if all(s >= 0 for s in vals):
        return Polygon(vs, check=False)
    n = len(vs)
    out: list[Point] = []
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        sa, sb = vals[i], vals[(i + 1) % n]
        if sa >= 0:
            out.append(a)
        if (sa > 0 and sb < 0) or (sa < 0 and sb > 0):
            out.append(a + (b - a) * (sa / (sa - sb)))
    cleaned = _clean_cycle(out)
    if cleaned is None:
        return None
    return Polygon(cleaned, check=False)


def intersect(P: Polygon, Q: Polygon) -> Polygon | None:
    R: Polygon | None = Polygon(P.vertices, check=False)
    for hp in h_rep(Q):
        R = clip(R, hp)
        if R is None:
            return None
    return R


def sym_diff_distance(P: Polygon, Q: Polygon) -> Fraction:
    """Area of the symmetric difference, computed exactly."""
    if P == Q:
        return Fraction(0)
    inter = intersect(P, Q)
    common = area(inter) if inter is not None else Fraction(0)
    return area(P) + area(Q) - 2 * common


def rectangle(x0, y0, x1, y1) -> Polygon:
    x0, y0, x1, y1 = map(as_rat, (x0, y0, x1, y1))
    if x1 <= x0 or y1 <= y0:
        raise ValueError("rectangle must have positive area")
    return Polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], check=False)


def dh_measure(P: Polygon, rect) -> Fraction:
    """Duistermaat-Heckman measure of an axis-aligned rectangle: area of ``rect`` inside ``P``.

    ``rect`` is ``(xmin, ymin, xmax, ymax)`` or an already built rectangle polygon.
    """
    R = rect if isinstance(rect, Polygon) else rectangle(*rect)
    inter = intersect(P, R)
    return area(inter) if inter is not None else Fraction(0)


@dataclass(frozen=True, slots=True)
class LatticeAffineMap:
    """``x -> A x + c`` with ``A`` an integer matrix of determinant +-1."""

    a11: int
    a12: int
    a21: int
    a22: int
    c: Point = Point(0, 0)

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            v = getattr(self, name)
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{name}={v} is not an integer")
                object.__setattr__(self, name, int(v))
            elif not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an integer")
        if self.det() not in (1, -1):
            raise ValueError(f"determinant {self.det()} is not +-1")
        object.__setattr__(self, "c", as_point(self.c))

    @classmethod
    def identity(cls) -> LatticeAffineMap:
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, c) -> LatticeAffineMap:
        return cls(1, 0, 0, 1, as_point(c))

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def linear(self, v: Point) -> Point:
        return Point(self.a11 * v.x + self.a12 * v.y, self.a21 * v.x + self.a22 * v.y)

    def __call__(self, p) -> Point:
        return self.linear(as_point(p)) + self.c

    def compose(self, other: LatticeAffineMap) -> LatticeAffineMap:
        """``self o other``: apply ``other`` first."""
        a = self
        b = other
        return LatticeAffineMap(
            a.a11 * b.a11 + a.a12 * b.a21,
            a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22,
            a.linear(b.c) + a.c,
        )

    def inverse(self) -> LatticeAffineMap:
        d = self.det()
        inv = LatticeAffineMap(self.a22 * d, -self.a12 * d, -self.a21 * d, self.a11 * d)
        return LatticeAffineMap(inv.a11, inv.a12, inv.a21, inv.a22, -inv.linear(self.c))


def apply_map(m: LatticeAffineMap, P: Polygon) -> Polygon:
    # the Polygon constructor restores counterclockwise order when det = -1
    return Polygon([m(v) for v in P.vertices])


# ----------------------------------------------------------------------------
# floating point side: bodies with irrational data


@dataclass(frozen=True)
class FloatHalfPlane:
    """``<normal, x> >= offset`` in floats; ``exact`` is False when no integer normal is known."""

    normal: tuple[float, float]
    offset: float
    exact: bool


class FloatPolygon:
    """Convex polygon with double precision vertices (counterclockwise)."""

    def __init__(self, vertices, tol: float = FLOAT_TOL):
        arr = np.asarray(vertices, dtype=float).reshape(-1, 2)
        if len(arr) < 3:
            raise InvalidPolygon("a polygon needs at least 3 vertices")
        x, y = arr[:, 0], arr[:, 1]
        signed = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
        if abs(signed) <= tol:
            raise InvalidPolygon("polygon has zero area")
        if signed < 0:
            arr = arr[::-1].copy()
        d = np.roll(arr, -1, axis=0) - arr
        turns = d[:, 0] * np.roll(d[:, 1], -1) - d[:, 1] * np.roll(d[:, 0], -1)
        bad = np.nonzero(turns < -tol)[0]
        if len(bad):
            raise InvalidPolygon(f"vertex {(int(bad[0]) + 1) % len(arr)} is reflex", index=int(bad[0]) + 1)
        if _winding([tuple(r) for r in arr]) != 1:
            raise InvalidPolygon("vertex cycle winds more than once")
        self.vertices = arr
        self.vertices.setflags(write=False)

    @classmethod
    def from_polygon(cls, P: Polygon) -> FloatPolygon:
        return cls(P.float_vertices())

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"FloatPolygon({self.vertices.tolist()})"

    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def bbox(self) -> tuple[float, float, float, float]:
        lo = self.vertices.min(axis=0)
        hi = self.vertices.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def float_vertices(self) -> np.ndarray:
        return self.vertices

    def contains(self, xy: np.ndarray) -> np.ndarray:
        return contains_points(self.vertices, xy)

    def support(self, u) -> float:
        return float(np.max(self.vertices @ np.asarray(u, dtype=float)))

    def h_rep(self) -> list[FloatHalfPlane]:
        out = []
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            d = b - a
            nrm = np.array([-d[1], d[0]])
            ratio = _small_ratio(d[0], d[1])
            if ratio is not None:
                nrm = np.array([-ratio[1], ratio[0]], dtype=float)
            else:
                nrm = nrm / np.hypot(*nrm)
            out.append(FloatHalfPlane((float(nrm[0]), float(nrm[1])), float(nrm @ a), ratio is not None))
        return out


def _small_ratio(dx: float, dy: float, max_den: int = 1000):
    """Integer direction (p, q) if ``(dx, dy)`` is a small-denominator rational slope."""
    if dx == 0 or dy == 0:
        return (int(math.copysign(1, dx)) if dx else 0, int(math.copysign(1, dy)) if dy else 0)
    r = Fraction(dy / dx).limit_denominator(max_den)
    if abs(float(r) - dy / dx) > 1e-12 * max(1.0, abs(dy / dx)):
        return None
    p, q = r.denominator, r.numerator
    if dx < 0:
        p, q = -p, -q
    return (p, q)


def contains_points(verts: np.ndarray, xy: np.ndarray) -> np.ndarray:
    """Vectorised point-in-convex-polygon test (CCW vertices), O(log n) per point."""
    xy = np.asarray(xy, dtype=float)
    v0 = verts[0]
    rel = verts[1:] - v0
    p = xy - v0
    n = len(verts)
    # fan from v0: find the wedge between rays v0->v_i and v0->v_{i+1}
    c_first = rel[0, 0] * p[:, 1] - rel[0, 1] * p[:, 0]
    c_last = rel[-1, 0] * p[:, 1] - rel[-1, 1] * p[:, 0]
    inside = (c_first >= 0) & (c_last <= 0)
    # cross(rel_i, p) is decreasing in i for points in the fan
    lo = np.zeros(len(xy), dtype=np.int64)
    hi = np.full(len(xy), n - 2, dtype=np.int64)
    while True:
        active = hi - lo > 1
        if not active.any():
            break
        mid = (lo + hi) // 2
        c = rel[mid, 0] * p[:, 1] - rel[mid, 1] * p[:, 0]
        go = active & (c >= 0)
        lo = np.where(go, mid, lo)
        hi = np.where(active & ~go, mid, hi)
    a = rel[lo]
    b = rel[np.minimum(lo + 1, n - 2)]
    edge = b - a
    c = edge[:, 0] * (p[:, 1] - a[:, 1]) - edge[:, 1] * (p[:, 0] - a[:, 0])
    return inside & (c >= 0)


def _float_clip(verts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # keep the part of verts to the left of the directed line a->b
    d = b - a
    s = d[0] * (verts[:, 1] - a[1]) - d[1] * (verts[:, 0] - a[0])
    out = []
    n = len(verts)
    for i in range(n):
        j = (i + 1) % n
        if s[i] >= 0:
            out.append(verts[i])
        if (s[i] > 0 > s[j]) or (s[i] < 0 < s[j]):
            t = s[i] / (s[i] - s[j])
            out.append(verts[i] + t * (verts[j] - verts[i]))
    return np.array(out).reshape(-1, 2)


def _shoelace(verts: np.ndarray) -> float:
    if len(verts) < 3:
        return 0.0
    x, y = verts[:, 0], verts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def float_sym_diff(P, Q) -> float:
    """Symmetric-difference area of two convex polygons in double precision."""
    a = P.float_vertices()
    b = Q.float_vertices()
    inter = a
    for i in range(len(b)):
        inter = _float_clip(inter, b[i], b[(i + 1) % len(b)])
        if len(inter) < 3:
            inter = np.zeros((0, 2))
            break
    return max(0.0, _shoelace(a) + _shoelace(b) - 2 * _shoelace(inter))


def _point_to_convex(p: np.ndarray, verts: np.ndarray) -> float:
    a = verts
    b = np.roll(verts, -1, axis=0)
    d = b - a
    s = d[:, 0] * (p[1] - a[:, 1]) - d[:, 1] * (p[0] - a[:, 0])
    if np.all(s >= 0):
        return 0.0
    t = np.clip(((p - a) * d).sum(axis=1) / (d * d).sum(axis=1), 0.0, 1.0)
    closest = a + t[:, None] * d
    return float(np.min(np.hypot(*(closest - p).T)))


def hausdorff(P, Q, n_directions: int = 8192) -> float:
    """Hausdorff distance between two convex bodies.

    For polygons the supremum of the distance to the other set is attained
    at a vertex.  When either argument only offers a support function the
    identity ``d_H = max_u |h_P(u) - h_Q(u)|`` is evaluated on
    ``n_directions`` equally spaced directions.
    """
    if not (hasattr(P, "float_vertices") and hasattr(Q, "float_vertices")):
        theta = np.linspace(0.0, 2 * np.pi, n_directions, endpoint=False)
        U = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return float(np.max(np.abs(_support_values(P, U) - _support_values(Q, U))))
    a = P.float_vertices()
    b = Q.float_vertices()
    d1 = max(_point_to_convex(p, b) for p in a)
    d2 = max(_point_to_convex(q, a) for q in b)
    return max(d1, d2)


def _support_values(body, U: np.ndarray) -> np.ndarray:
    if hasattr(body, "float_vertices"):
        return np.max(U @ body.float_vertices().T, axis=1)
    if hasattr(body, "support_many"):
        return body.support_many(U)
    return np.array([body.support(u) for u in U])
