"""Approximation by Delzant polygons.

Three stages, composed by :func:`delzant_approximate`:

* :func:`inner_polygon` replaces a compact convex body by the convex hull
  of the grid cells it contains;
* :func:`rationalize` replaces irrational edge slopes by continued-fraction
  convergents;
* :func:`smooth` resolves every non-smooth vertex of a rational polygon by
  cutting off a chain of small corners, one lattice cut per step of a
  strictly decreasing integer sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .delzant import DelzantPolygon, rational_length, validate
from .errors import DefectOne, EpsilonTooLarge, IrrationalEdge, ToleranceUnachievable
from .geometry import (
    FloatPolygon,
    LatticeAffineMap,
    Point,
    Polygon,
    _monotone_chain,
    area,
    as_rat,
    float_sym_diff,
    primitive_direction,
)
from .montecarlo import DEFAULT_SAMPLES, MCEstimate, estimate_sym_diff

ROTATION = LatticeAffineMap(0, -1, 1, 0)


def _shear(k: int) -> LatticeAffineMap:
    return LatticeAffineMap(1, k, 0, 1)


# ----------------------------------------------------------------------------
# stage A: resolving non-smooth vertices


def _incident_directions(P: Polygon, i: int) -> tuple[Point, Point]:
    vs = P.vertices
    p = vs[i]
    if not isinstance(P, Polygon):
        raise IrrationalEdge("exact rational vertices required")
    return primitive_direction(vs[i - 1] - p), primitive_direction(vs[(i + 1) % len(vs)] - p)


def vertex_defect(P: Polygon, v) -> int:
    """``|det|`` of the primitive directions of the two edges at ``v``; 1 means smooth."""
    if isinstance(P, FloatPolygon):
        raise IrrationalEdge("float polygons have no exact edge directions")
    i = v if isinstance(v, int) else P.index_of(v)
    u, w = _incident_directions(P, i)
    return abs(int(u.cross(w)))


def solve_alpha0(u: Point, v: Point) -> tuple[int, int]:
    """Return ``(alpha0, alpha1)`` with ``alpha1 = |det[u v]|`` and
    ``a*alpha0 = c``, ``b*alpha0 = d`` modulo ``alpha1`` for ``u = (a, b)``, ``v = (c, d)``.

    Exhaustive over the residues; ``alpha1`` is small in practice.
    """
    a, b, c, d = int(u.x), int(u.y), int(v.x), int(v.y)
    alpha1 = abs(a * d - b * c)
    if alpha1 == 0:
        raise ValueError("directions are parallel")
    for alpha0 in range(alpha1):
        if (a * alpha0 - c) % alpha1 == 0 and (b * alpha0 - d) % alpha1 == 0:
            return alpha0, alpha1
    raise AssertionError("no solution: directions are not primitive")  # pragma: no cover


def normalizing_map(u: Point, v: Point) -> tuple[LatticeAffineMap, int, int]:
    """``A`` in GL(2,Z) with ``A u = (1, 0)`` and ``A v = (alpha0, alpha1)``."""
    alpha0, alpha1 = solve_alpha0(u, v)
    a, b, c, d = int(u.x), int(u.y), int(v.x), int(v.y)
    det = a * d - b * c
    sign = 1 if det > 0 else -1
    r11, r12 = (d - alpha0 * b) * sign, (alpha0 * a - c) * sign
    assert r11 % alpha1 == 0 and r12 % alpha1 == 0
    A = LatticeAffineMap(r11 // alpha1, r12 // alpha1, -b * sign, a * sign)
    return A, alpha0, alpha1


@dataclass
class ResolutionTrace:
    alpha_sequence: list[int]
    applied_maps: list[LatticeAffineMap]
    new_edges: int
    epsilon: Fraction
    cut_offsets: list[Fraction] = field(default_factory=list)


def _largest_power_of_two_below(bound: Fraction) -> Fraction:
    h = Fraction(1)
    while h > bound:
        h /= 2
    while 2 * h <= bound:
        h *= 2
    return h


def resolve_vertex(P: Polygon, v, eps) -> tuple[Polygon, ResolutionTrace]:
    """Make vertex ``v`` smooth by a chain of cuts inside its ``eps``-ball.

    In the frame where the incident directions are ``(1, 0)`` and
    ``(beta, alpha)`` with ``0 < beta < alpha``, each cut is the vertical
    line at lattice offset ``h`` from the vertex.  One endpoint of the cut is
    smooth, the other has defect ``beta``; rotating by a quarter turn and
    shearing restores the same picture with ``(alpha, beta)`` replaced by
    ``(beta, -alpha mod beta)``.  The chain stops when the defect is 1.

    Each offset is the largest power of two that keeps both new vertices
    within half of the remaining incident edges and strictly inside the ball.
    """
    eps = as_rat(eps)
    if eps <= 0:
        raise EpsilonTooLarge("epsilon must be positive")
    vs = list(P.vertices)
    i = v if isinstance(v, int) else P.index_of(v)
    p = vs[i]
    u, w = _incident_directions(P, i)
    if abs(u.cross(w)) == 1:
        raise DefectOne(f"vertex {p} is already smooth")
    nearest = min((q - p).norm2() for q in vs if q != p)
    if eps * eps >= nearest:
        raise EpsilonTooLarge(f"the {eps}-ball around {p} contains another vertex")

    A, alpha0, alpha1 = normalizing_map(u, w)
    S = _shear(-(alpha0 // alpha1))
    M = S.compose(A)
    trace = ResolutionTrace([alpha1], [A, S], 0, eps)
    eps2 = eps * eps
    while True:
        img_u, img_w = M.linear(u), M.linear(w)
        beta, alpha = int(img_w.x), int(img_w.y)
        assert img_u == Point(1, 0) and 0 < beta < alpha and M.det() in (1, -1)
        trace.alpha_sequence.append(beta)
        q = vs[i]
        len_u = rational_length(q, vs[i - 1])
        len_w = rational_length(q, vs[(i + 1) % len(vs)])
        h = _largest_power_of_two_below(min(len_u / 2, len_w * beta / 2))
        while (q + u * h - p).norm2() >= eps2 or (q + w * (h / beta) - p).norm2() >= eps2:
            h /= 2
        a1, a2 = q + u * h, q + w * (h / beta)
        vs[i : i + 1] = [a1, a2]
        i += 1
        trace.new_edges += 1
        trace.cut_offsets.append(h)
        if beta == 1:
            break
        u = primitive_direction(a1 - a2)
        B = ROTATION
        img = B.linear(M.linear(w))
        S = _shear(-(int(img.x) // int(img.y)))
        M = S.compose(B.compose(M))
        trace.applied_maps += [B, S]
    return Polygon(vs, check=False), trace


@dataclass
class SmoothReport:
    traces: list[ResolutionTrace]
    added_edges: int
    edge_bound: int
    loss: Fraction
    loss_bound: Fraction


def _min_pairwise_dist2(P: Polygon) -> Fraction:
    vs = P.vertices
    return min((vs[j] - vs[i]).norm2() for i in range(len(vs)) for j in range(i + 1, len(vs)))


def smooth(P: Polygon, eps, *, report: bool = False):
    """Resolve every non-smooth vertex of a rational polygon.

    Returns a :class:`DelzantPolygon` contained in ``P`` and equal to it
    outside the ``eps``-balls of the non-smooth vertices.  With
    ``report=True`` returns ``(polygon, SmoothReport)``; the report carries
    the exact area lost.
    """
    eps = as_rat(eps)
    P = Polygon(P.vertices, check=False)
    if 4 * eps * eps >= _min_pairwise_dist2(P):
        raise EpsilonTooLarge(f"epsilon {eps} is not below half the minimum vertex distance")
    rep = validate(P)
    bad = [(P.vertices[i], d) for i, d in rep.non_smooth_vertices]
    cur = P
    traces = []
    for pt, _ in bad:
        cur, tr = resolve_vertex(cur, cur.index_of(pt), eps)
        traces.append(tr)
    out = DelzantPolygon(cur.vertices, check=False)
    if not report:
        return out
    loss = area(P) - area(out)
    sr = SmoothReport(
        traces,
        len(out) - len(P),
        sum(d - 1 for _, d in bad),
        loss,
        sum((eps * eps * d for _, d in bad), Fraction(0)),
    )
    return out, sr


# ----------------------------------------------------------------------------
# stage B: rational slopes


def continued_fraction(x: Fraction, max_terms: int = 10**6) -> list[int]:
    terms = []
    while len(terms) < max_terms:
        a = math.floor(x)
        terms.append(a)
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    return terms


def convergents(terms: list[int]) -> list[Fraction]:
    out = []
    h0, h1 = 1, terms[0]
    k0, k1 = 0, 1
    out.append(Fraction(h1, k1))
    for a in terms[1:]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append(Fraction(h1, k1))
    return out


def _direction_convergent(dx: float, dy: float, depth: int) -> Point:
    """Integer direction from the ``depth``-th convergent of the edge slope."""
    if dy == 0 or dx == 0:
        return Point(int(math.copysign(1, dx)) if dx else 0, int(math.copysign(1, dy)) if dy else 0)
    if abs(dx) >= abs(dy):
        cs = convergents(continued_fraction(Fraction(dy) / Fraction(dx), depth + 1))
        r = cs[min(depth, len(cs) - 1)]
        s = 1 if dx > 0 else -1
        return Point(s * r.denominator, s * r.numerator)
    cs = convergents(continued_fraction(Fraction(dx) / Fraction(dy), depth + 1))
    r = cs[min(depth, len(cs) - 1)]
    s = 1 if dy > 0 else -1
    return Point(s * r.numerator, s * r.denominator)


def _exact_if_small(P: FloatPolygon, max_den: int) -> Polygon | None:
    pts = [(Fraction(float(x)), Fraction(float(y))) for x, y in P.vertices]
    if any(c.denominator > max_den for pt in pts for c in pt):
        return None
    try:
        return Polygon(pts)
    except Exception:
        return None


def rationalize(P: FloatPolygon, eps: float, *, max_depth: int = 64, exact_denominator: int = 2**20) -> Polygon:
    """Rational polygon with the same edge count within ``eps`` of ``P``.

    Level ``l`` takes the ``l``-th continued-fraction convergent of every
    edge slope and anchors each edge line at its midpoint rounded to the
    grid ``2**-l``.  The first level whose symmetric-difference area is at
    most ``eps`` wins; levels are tried in order, so a smaller ``eps`` never
    yields a worse polygon.  Inputs whose coordinates are already rationals
    with denominator at most ``exact_denominator`` are returned exactly.
    """
    if isinstance(P, Polygon):
        return P
    exact = _exact_if_small(P, exact_denominator)
    if exact is not None:
        return exact
    V = P.vertices
    n = len(V)
    for level in range(1, max_depth + 1):
        grid = 2**level
        lines = []
        for i in range(n):
            a, b = V[i], V[(i + 1) % n]
            d = _direction_convergent(float(b[0] - a[0]), float(b[1] - a[1]), level)
            mid = (a + b) / 2
            anchor = Point(Fraction(round(mid[0] * grid), grid), Fraction(round(mid[1] * grid), grid))
            lines.append((anchor, d))
        pts = []
        ok = True
        for i in range(n):
            (p1, d1), (p2, d2) = lines[i - 1], lines[i]
            den = d1.cross(d2)
            if den <= 0:
                ok = False
                break
            s = (p2 - p1).cross(d2) / den
            pts.append(p1 + d1 * s)
        if not ok:
            continue
        try:
            Q = Polygon(pts)
        except Exception:
            continue
        if len(Q) == n and float_sym_diff(P, Q) <= eps:
            return Q
    raise ToleranceUnachievable(f"no rational polygon within {eps} up to convergent depth {max_depth}")


# ----------------------------------------------------------------------------
# stage C: inner polygons of convex bodies


class SupportOracle:
    """A compact convex body known through its support function.

    ``support(u)`` returns ``max <u, x>`` over the body; ``bbox`` bounds it.
    ``contains`` is an optional vectorised membership test; without it
    membership is decided from ``n_directions`` support lines, which is
    exact for polygons and slightly generous for curved bodies.
    """

    def __init__(
        self,
        support: Callable,
        bbox: tuple[float, float, float, float],
        contains: Callable | None = None,
        n_directions: int = 2048,
        name: str = "body",
    ):
        self._support = support
        self._bbox = tuple(float(x) for x in bbox)
        self._contains = contains
        self.n_directions = n_directions
        self.name = name

    @classmethod
    def disc(cls, center=(0.0, 0.0), radius: float = 1.0) -> SupportOracle:
        cx, cy = map(float, center)
        r = float(radius)

        def h(u):
            u = np.asarray(u, dtype=float)
            return cx * u[..., 0] + cy * u[..., 1] + r * np.hypot(u[..., 0], u[..., 1])

        def inside(xy):
            return (xy[:, 0] - cx) ** 2 + (xy[:, 1] - cy) ** 2 <= r * r

        return cls(h, (cx - r, cy - r, cx + r, cy + r), inside, name=f"disc(r={r})")

    @classmethod
    def from_polygon(cls, P) -> SupportOracle:
        fp = P if isinstance(P, FloatPolygon) else FloatPolygon.from_polygon(P)
        V = fp.vertices
        return cls(lambda u: np.max(np.asarray(u, dtype=float) @ V.T, axis=-1), fp.bbox(), fp.contains, name="polygon")

    def support(self, u) -> float:
        return float(self._support(np.asarray(u, dtype=float)))

    def support_many(self, U: np.ndarray) -> np.ndarray:
        try:
            vals = np.asarray(self._support(U), dtype=float)
            if vals.shape == (len(U),):
                return vals
        except Exception:
            pass
        return np.array([self.support(u) for u in U])

    def bbox(self):
        return self._bbox

    def _directions(self):
        theta = np.linspace(0.0, 2 * np.pi, self.n_directions, endpoint=False)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)

    def contains(self, xy: np.ndarray) -> np.ndarray:
        xy = np.asarray(xy, dtype=float)
        if self._contains is not None:
            return np.asarray(self._contains(xy), dtype=bool)
        U = self._directions()
        h = self.support_many(U)
        out = np.ones(len(xy), dtype=bool)
        for k in range(len(U)):
            out &= xy @ U[k] <= h[k] + 1e-12
        return out

    def outer_area(self) -> float:
        """Area of the circumscribed polygon cut out by the sampled support lines (an upper bound)."""
        U = self._directions()
        h = self.support_many(U)
        U2, h2 = np.roll(U, -1, axis=0), np.roll(h, -1)
        det = U[:, 0] * U2[:, 1] - U[:, 1] * U2[:, 0]
        x = (h * U2[:, 1] - h2 * U[:, 1]) / det
        y = (U[:, 0] * h2 - U2[:, 0] * h) / det
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def check_sublinear(self, samples: int = 200, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(samples, 2))
        b = rng.normal(size=(samples, 2))
        lhs = self.support_many(a + b)
        rhs = self.support_many(a) + self.support_many(b)
        return bool(np.all(lhs <= rhs + 1e-9))


@dataclass
class InnerPolygon:
    polygon: FloatPolygon
    level: int
    gap_bound: float


def inner_polygon(C: SupportOracle, eps: float, *, min_level: int = 2, max_level: int = 11, details: bool = False):
    """Convex hull of the dyadic grid cells contained in ``C``, refined until
    ``outer_area - hull_area <= eps``.

    The grid at level ``l`` splits the bounding box into ``2**l`` columns
    and rows; grids are nested, so the hull can only grow under refinement.
    """
    x0, y0, x1, y1 = C.bbox()
    outer = C.outer_area()
    for level in range(min_level, max_level + 1):
        m = 2**level
        xs = x0 + (x1 - x0) * np.arange(m + 1) / m
        ys = y0 + (y1 - y0) * np.arange(m + 1) / m
        gx, gy = np.meshgrid(xs, ys)
        inside = C.contains(np.stack([gx.ravel(), gy.ravel()], axis=1)).reshape(m + 1, m + 1)
        cells = inside[:-1, :-1] & inside[:-1, 1:] & inside[1:, :-1] & inside[1:, 1:]
        pts = []
        for j in np.nonzero(cells.any(axis=1))[0]:
            cols = np.nonzero(cells[j])[0]
            for c in (cols[0], cols[-1] + 1):
                pts.append((float(xs[c]), float(ys[j])))
                pts.append((float(xs[c]), float(ys[j + 1])))
        if len(pts) < 3:
            continue
        hull = _monotone_chain(sorted(set(pts)))
        if len(hull) < 3:
            continue
        fp = FloatPolygon(hull)
        gap = outer - fp.area()
        if gap <= eps:
            return InnerPolygon(fp, level, gap) if details else fp
    raise ToleranceUnachievable(f"grid refinement up to level {max_level} leaves an area gap above {eps}")


# ----------------------------------------------------------------------------
# composition


@dataclass
class StageReport:
    name: str
    budget: float
    estimate: float
    note: str = ""


@dataclass
class Approximation:
    polygon: DelzantPolygon
    stages: list[StageReport]
    estimate: MCEstimate | None


def choose_smoothing_epsilon(P: Polygon, budget: Fraction):
    """Largest power-of-two radius whose resolution loses at most ``budget`` area."""
    eps = _largest_power_of_two_below(Fraction(1))
    dmin2 = _min_pairwise_dist2(P)
    while 4 * eps * eps >= dmin2:
        eps /= 2
    while True:
        D, rep = smooth(P, eps, report=True)
        if rep.loss <= budget:
            return eps, D, rep
        eps /= 2


def delzant_approximate(C, eps: float, *, samples: int = DEFAULT_SAMPLES, seed: int = 0, max_level: int = 11) -> Approximation:
    """Delzant polygon within ``eps`` of ``C`` (support oracle, float or exact polygon).

    Budget ``eps/3`` per stage; stages that do not apply are reported with
    zero cost.  The returned estimate is a Monte-Carlo measurement of the
    full distance, independent of the stage bookkeeping.
    """
    third = eps / 3
    stages = []
    if isinstance(C, Polygon) and validate(C).is_delzant:
        D = DelzantPolygon.from_polygon(C)
        stages = [StageReport(s, third, 0.0, "identity") for s in ("inner", "rational", "smooth")]
        return Approximation(D, stages, None)

    if isinstance(C, SupportOracle):
        ip = inner_polygon(C, third, max_level=max_level, details=True)
        P2 = ip.polygon
        stages.append(StageReport("inner", third, ip.gap_bound, f"grid level {ip.level}"))
    else:
        P2 = C
        stages.append(StageReport("inner", third, 0.0, "identity"))

    if isinstance(P2, FloatPolygon):
        PQ = rationalize(P2, third)
        stages.append(StageReport("rational", third, float_sym_diff(P2, PQ)))
    else:
        PQ = P2
        stages.append(StageReport("rational", third, 0.0, "identity"))

    r_eps, D, rep = choose_smoothing_epsilon(PQ, Fraction(third))
    stages.append(StageReport("smooth", third, float(rep.loss), f"radius {r_eps}, {rep.added_edges} new edges"))
    est = estimate_sym_diff(C, D, samples=samples, seed=seed)
    return Approximation(D, stages, est)
