"""Moduli-level constructions: decomposition into a base shape plus corner
choppings, explicit paths between Delzant polygons, and the sequences
showing the space is neither complete nor locally compact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .delzant import (
    DelzantPolygon,
    check_hirzebruch,
    congruent,
    corner_chop,
    delzant_triangle,
    edge_slide,
    frame_map,
    hirzebruch,
)
from .errors import ConstraintViolation, DecompositionFailed, ParameterOutOfRange
from .geometry import (
    FloatPolygon,
    LatticeAffineMap,
    Point,
    Polygon,
    apply_map,
    as_rat,
    primitive_direction,
    sym_diff_distance,
)

# ----------------------------------------------------------------------------
# unchopping and decomposition


def unchop(P: DelzantPolygon, e: int) -> tuple[DelzantPolygon, Fraction] | None:
    """Undo a corner chopping whose cut is edge ``e``; ``None`` if edge ``e`` is not such a cut."""
    P = DelzantPolygon.from_polygon(P)
    vs = list(P.vertices)
    n = len(vs)
    if n < 4:
        return None
    e %= n
    a, b = vs[e], vs[(e + 1) % n]
    d1 = primitive_direction(a - vs[e - 1])
    d2 = primitive_direction(vs[(e + 2) % n] - b)
    den = d1.cross(d2)
    if den == 0:
        return None
    s = (b - a).cross(d2) / den
    s2 = d1.cross(b - a) / den
    if s <= 0 or s2 <= 0 or s != s2:
        return None
    w = a + d1 * s
    if e + 1 < n:
        vs[e : e + 2] = [w]
    else:
        vs = [w] + vs[1:-1]
    try:
        Q = DelzantPolygon(vs)
    except Exception:
        return None
    return Q, s


@dataclass(frozen=True)
class TriangleBase:
    lam: Fraction

    family = "triangle"

    def polygon(self) -> DelzantPolygon:
        return delzant_triangle(self.lam)

    def params(self) -> tuple:
        return (self.lam,)


@dataclass(frozen=True)
class HirzebruchBase:
    a: Fraction
    b: Fraction
    k: int

    family = "hirzebruch"

    def polygon(self) -> DelzantPolygon:
        return hirzebruch(self.a, self.b, self.k, require_wide=False)

    def params(self) -> tuple:
        return (self.a, self.b, self.k)


Base = Union[TriangleBase, HirzebruchBase]


@dataclass
class Decomposition:
    """``apply_map(witness, P)`` equals ``base`` followed by ``chops`` (vertex, size)."""

    witness: LatticeAffineMap
    base: Base
    chops: list[tuple[Point, Fraction]]
    representative: DelzantPolygon

    def replay(self) -> DelzantPolygon:
        X = self.base.polygon()
        for v, eps in self.chops:
            X = corner_chop(X, v, eps)
        return X

    def stages(self) -> list[DelzantPolygon]:
        X = self.base.polygon()
        out = [X]
        for v, eps in self.chops:
            X = corner_chop(X, v, eps)
            out.append(X)
        return out

    def chop_sizes(self) -> list[Fraction]:
        return sorted(eps for _, eps in self.chops)


def _unchop_options(P: DelzantPolygon):
    opts = []
    for e in range(len(P)):
        r = unchop(P, e)
        if r is not None:
            Q, eps = r
            w = next(v for v in Q.vertices if v not in P.vertices)
            opts.append((eps, e, Q, w))
    return opts


def recognize_base(P: DelzantPolygon) -> tuple[Base, LatticeAffineMap]:
    """Identify a 3- or 4-edge Delzant polygon with a standard triangle or trapezoid.

    Trapezoid placements are enumerated over every vertex and both
    orderings of its edge directions; among those with ``a >= b`` the
    smallest ``k`` wins, then the smallest ``a``.  A trapezoid that only
    fits with ``a < b`` (possible for ``k = 1`` alone) is a chopped
    triangle and is rejected here.
    """
    P = DelzantPolygon.from_polygon(P)
    if len(P) == 3:
        lam = P.frames[0].len1
        base = TriangleBase(lam)
        m = congruent(P, base.polygon())
        if m is None:
            raise DecompositionFailed(f"triangle {P} is not congruent to the standard one")
        return base, m
    if len(P) != 4:
        raise DecompositionFailed(f"base must have 3 or 4 edges, got {len(P)}")
    cands = []
    origin, ex, ey = Point(0, 0), Point(1, 0), Point(0, 1)
    for f in P.frames:
        for s1, s2 in ((f.u1, f.u2), (f.u2, f.u1)):
            m = frame_map((f.vertex, s1, s2), (origin, ex, ey))
            if m is None:
                continue
            img = apply_map(m, P)
            vs = set(img.vertices)
            X = next(v for v in vs if v.y == 0 and v.x > 0)
            Y = next(v for v in vs if v.x == 0 and v.y > 0)
            Z = next(v for v in vs if v not in (origin, X, Y))
            if Z.y != Y.y or Z.x <= 0:
                continue
            b = Y.y
            slope = (Z.x - X.x) / b
            if slope.denominator != 1 or slope > 0:
                continue
            k = int(-slope)
            a = (Z.x + X.x) / 2
            try:
                check_hirzebruch(a, b, k)
            except ConstraintViolation:
                continue
            shift = LatticeAffineMap.translation(Point(0, -b / 2))
            cands.append(((k, a, b), HirzebruchBase(a, b, k), shift.compose(m)))
    if not cands:
        raise DecompositionFailed(f"no trapezoid placement found for {P}")
    _, base, m = min(cands, key=lambda c: c[0])
    if apply_map(m, P) != base.polygon():  # pragma: no cover
        raise DecompositionFailed("trapezoid witness does not verify")
    return base, m


def _reductions(P: DelzantPolygon, steps: tuple, out: list, limit: int = 64):
    # smallest chop first; ties branch so the final choice does not depend on vertex order
    if len(P) == 3:
        out.append((P, steps))
        return
    if len(P) == 4:
        try:
            out.append((P, steps, recognize_base(P)))
            return
        except DecompositionFailed:
            # a narrow k = 1 trapezoid: keep going down to the triangle
            pass
    opts = _unchop_options(P)
    if not opts:
        raise DecompositionFailed(f"no unchoppable edge on a {len(P)}-gon: {P}")
    smallest = min(o[0] for o in opts)
    for eps, _, Q, w in [o for o in opts if o[0] == smallest]:
        if len(out) >= limit:
            return
        _reductions(Q, steps + ((w, eps),), out, limit)


def canonicalize(P: DelzantPolygon) -> Decomposition:
    """Decompose ``P`` as a lattice image of a standard base followed by corner choppings.

    Chops are undone smallest first.  The recovered base and chop sizes are
    invariant under lattice affine maps of ``P``.
    """
    P = DelzantPolygon.from_polygon(P)
    found = []
    _reductions(P, (), found)
    best = None
    for B0, steps, *known in found:
        base, m = known[0] if known else recognize_base(B0)
        chops = [(m(w), eps) for w, eps in reversed(steps)]
        key = (base.family, base.params(), sorted(eps for _, eps in chops))
        if best is None or key < best[0]:
            best = (key, base, m, chops)
    _, base, m, chops = best
    dec = Decomposition(m, base, chops, base.polygon())
    rep = dec.replay()
    if rep != apply_map(m, P):
        raise DecompositionFailed("replay does not reproduce the mapped input")
    dec.representative = rep
    return dec


# ----------------------------------------------------------------------------
# moves and paths


class Move:
    """A one-parameter family of Delzant polygons over ``t`` in [0, 1]."""

    kind = "move"
    degenerate: frozenset = frozenset()

    def at(self, t: Fraction) -> DelzantPolygon:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def start(self) -> DelzantPolygon:
        return self.at(Fraction(0))

    @property
    def end(self) -> DelzantPolygon:
        return self.at(Fraction(1))


@dataclass(frozen=True)
class Translate(Move):
    polygon: DelzantPolygon
    vector: Point
    kind = "translate"

    def at(self, t):
        return self.polygon.translate(self.vector * t) if t else self.polygon


@dataclass(frozen=True)
class Scale(Move):
    polygon: DelzantPolygon
    s0: Fraction
    s1: Fraction
    kind = "scale"

    def at(self, t):
        return self.polygon.scale(self.s0 + (self.s1 - self.s0) * t)


@dataclass(frozen=True)
class EdgeSlide(Move):
    polygon: DelzantPolygon
    edge: int
    t0: Fraction
    t1: Fraction
    kind = "slide"

    def at(self, t):
        return edge_slide(self.polygon, self.edge, self.t0 + (self.t1 - self.t0) * t)


@dataclass(frozen=True)
class Interpolate(Move):
    """``H(a(t), b(t), k)`` with ``a, b`` linear in ``t``; admissibility is linear so endpoints suffice."""

    a0: Fraction
    b0: Fraction
    a1: Fraction
    b1: Fraction
    k: int
    kind = "interpolate"

    def at(self, t):
        return hirzebruch(self.a0 + (self.a1 - self.a0) * t, self.b0 + (self.b1 - self.b0) * t, self.k, require_wide=False)


@dataclass(frozen=True)
class ChopHomotopy(Move):
    polygon: DelzantPolygon
    vertex: Point
    eps: Fraction
    kind = "chop"
    degenerate = frozenset({Fraction(0)})

    def at(self, t):
        return corner_chop(self.polygon, self.vertex, self.eps * t) if t else self.polygon


@dataclass(frozen=True)
class UnchopHomotopy(Move):
    polygon: DelzantPolygon
    vertex: Point
    eps: Fraction
    kind = "unchop"
    degenerate = frozenset({Fraction(1)})

    def at(self, t):
        return corner_chop(self.polygon, self.vertex, self.eps * (1 - t)) if t != 1 else self.polygon


@dataclass(frozen=True)
class HirzebruchStep(Move):
    """``H(a,b,k)`` to ``H(a,b,k+1)`` through the pentagon both chop to.

    First half: chop the top right corner of ``H(a,b,k)`` up to size
    ``b/2``.  Second half: shrink a chop of the bottom right corner of
    ``H(a,b,k+1)`` from ``b/2`` to 0.  Needs ``a - (k+1) b/2 > 0``.
    """

    a: Fraction
    b: Fraction
    k: int
    kind = "hirzebruch-step"

    def __post_init__(self):
        check_hirzebruch(self.a, self.b, self.k + 1, require_wide=False)

    def at(self, t):
        a, b, k = self.a, self.b, self.k
        h = b / 2
        if t <= Fraction(1, 2):
            H = hirzebruch(a, b, k, require_wide=False)
            return corner_chop(H, Point(a - k * h, h), t * b) if t else H
        H = hirzebruch(a, b, k + 1, require_wide=False)
        return corner_chop(H, Point(a + (k + 1) * h, -h), (1 - t) * b) if t != 1 else H


@dataclass(frozen=True)
class SquareToTriangle(Move):
    """Chop the square ``[0, lam]^2`` at its top right corner with size ``lam * t``.

    At ``t = 1`` the chop swallows two edges and leaves the triangle
    ``{x, y >= 0, x + y <= lam}`` exactly.
    """

    lam: Fraction
    kind = "square-to-triangle"
    degenerate = frozenset({Fraction(1)})

    def at(self, t):
        lam = self.lam
        if t == 1:
            return delzant_triangle(lam)
        sq = DelzantPolygon([(0, 0), (lam, 0), (lam, lam), (0, lam)], check=False)
        return corner_chop(sq, Point(lam, lam), lam * t) if t else sq


@dataclass(frozen=True)
class Reverse(Move):
    move: Move
    kind = "reverse"

    @property
    def degenerate(self):
        return frozenset(1 - t for t in self.move.degenerate)

    def at(self, t):
        return self.move.at(1 - t)


@dataclass
class Path:
    """Moves laid end to end, move ``i`` occupying ``[i/n, (i+1)/n]``."""

    moves: list[Move]
    source: DelzantPolygon
    target: DelzantPolygon
    source_witness: LatticeAffineMap | None = None
    target_witness: LatticeAffineMap | None = None

    def _locate(self, t) -> tuple[int, Fraction]:
        t = as_rat(t)
        if t < 0 or t > 1:
            raise ParameterOutOfRange(f"t = {t} is outside [0, 1]")
        n = len(self.moves)
        s = t * n
        i = min(math.floor(s), n - 1)
        return i, s - i

    def is_degenerate(self, t) -> bool:
        if not self.moves:
            return False
        i, local = self._locate(t)
        return local in self.moves[i].degenerate

    def reversed(self) -> Path:
        return Path([Reverse(m) for m in reversed(self.moves)], self.target, self.source, self.target_witness, self.source_witness)


def sample(path: Path, t) -> DelzantPolygon:
    t = as_rat(t)
    if not path.moves:
        if t < 0 or t > 1:
            raise ParameterOutOfRange(f"t = {t} is outside [0, 1]")
        return path.source
    i, local = path._locate(t)
    return path.moves[i].at(local)


def continuity_modulus(path: Path, N: int) -> Fraction:
    """Largest distance between consecutive samples on a uniform grid of ``N`` steps."""
    if N < 2:
        raise ValueError("N must be at least 2")
    prev = sample(path, 0)
    worst = Fraction(0)
    for i in range(1, N + 1):
        cur = sample(path, Fraction(i, N))
        worst = max(worst, sym_diff_distance(prev, cur))
        prev = cur
    return worst


def _hirzebruch_moves(a0, b0, k0, a1, b1, k1) -> list[Move]:
    moves: list[Move] = []
    if k0 == k1:
        if (a0, b0) != (a1, b1):
            moves.append(Interpolate(a0, b0, a1, b1, k0))
        return moves
    kmax = max(k0, k1)
    A = max(a0, kmax * b0 / 2 + b0 / 2)
    if A != a0:
        moves.append(Interpolate(a0, b0, A, b0, k0))
    if k1 > k0:
        moves += [HirzebruchStep(A, b0, k) for k in range(k0, k1)]
    else:
        moves += [Reverse(HirzebruchStep(A, b0, k)) for k in range(k0 - 1, k1 - 1, -1)]
    if (A, b0) != (a1, b1):
        moves.append(Interpolate(A, b0, a1, b1, k1))
    return moves


def _to_triangle_moves(base: HirzebruchBase, lam: Fraction) -> list[Move]:
    moves = _hirzebruch_moves(base.a, base.b, base.k, lam, lam, 0)
    moves.append(Translate(hirzebruch(lam, lam, 0), Point(0, lam / 2)))
    moves.append(SquareToTriangle(lam))
    return moves


def base_path(b1: Base, b2: Base) -> Path:
    """Path between the standard representatives of two bases."""
    src, dst = b1.polygon(), b2.polygon()
    if isinstance(b1, TriangleBase) and isinstance(b2, TriangleBase):
        moves = [] if b1 == b2 else [Scale(src, Fraction(1), b2.lam / b1.lam)]
    elif isinstance(b1, HirzebruchBase) and isinstance(b2, HirzebruchBase):
        moves = _hirzebruch_moves(b1.a, b1.b, b1.k, b2.a, b2.b, b2.k)
    elif isinstance(b1, HirzebruchBase):
        moves = _to_triangle_moves(b1, b2.lam)
    else:
        moves = [Reverse(m) for m in reversed(_to_triangle_moves(b2, b1.lam))]
    return Path(moves, src, dst)


def connect(P: DelzantPolygon, Q: DelzantPolygon) -> Path:
    """Path from the canonical representative of ``P`` to that of ``Q``.

    Undo ``P``'s chops, cross between the bases, redo ``Q``'s chops.  The
    witnesses relate the endpoints to ``P`` and ``Q`` themselves.
    """
    dP, dQ = canonicalize(P), canonicalize(Q)
    if dP.representative == dQ.representative:
        return Path([], dP.representative, dQ.representative, dP.witness, dQ.witness)
    moves: list[Move] = []
    stages = dP.stages()
    for j in range(len(dP.chops) - 1, -1, -1):
        v, eps = dP.chops[j]
        moves.append(UnchopHomotopy(stages[j], v, eps))
    moves += base_path(dP.base, dQ.base).moves
    stages = dQ.stages()
    for j, (v, eps) in enumerate(dQ.chops):
        moves.append(ChopHomotopy(stages[j], v, eps))
    return Path(moves, dP.representative, dQ.representative, dP.witness, dQ.witness)


# ----------------------------------------------------------------------------
# non-completeness and non-local-compactness


def cauchy_sequence(c, b, k: int, n: int) -> DelzantPolygon:
    """``n``-th term ``H(c/n + b*k/2, b, k)`` of a Cauchy sequence with a non-Delzant limit."""
    c, b = as_rat(c), as_rat(b)
    if c <= 0 or b <= 0:
        raise ConstraintViolation("c and b must be positive")
    if k == 1:
        raise ConstraintViolation("k = 1 gives a Delzant limit")
    if n < 1:
        raise ConstraintViolation("n must be at least 1")
    return hirzebruch(c / n + b * k / 2, b, k)


def cauchy_limit(c, b, k: int) -> Polygon:
    """Vertexwise limit of :func:`cauchy_sequence`: the right triangle with legs ``b*k`` and ``b``."""
    b = as_rat(b)
    if k < 1:
        raise ConstraintViolation("for k = 0 the terms collapse onto a segment")
    h = b / 2
    return Polygon([(0, -h), (b * k, -h), (0, h)])


def q_delta_size(epsilon: float) -> float:
    # irrational and strictly between epsilon/2 and epsilon
    return epsilon * (2 + math.sqrt(2)) / 4


def q_delta(epsilon: float) -> FloatPolygon:
    """Unit square ``[0,1] x [-1/2,1/2]`` with its top right corner cut down to the bottom right one.

    The top edge is shortened by an irrational ``delta`` in ``(epsilon/2, epsilon)``,
    so the slanted edge has irrational slope and the polygon is not rational.
    """
    if not 0 < epsilon < 1:
        raise ParameterOutOfRange("epsilon must lie in (0, 1)")
    d = q_delta_size(epsilon)
    return FloatPolygon([(0.0, -0.5), (1.0, -0.5), (1.0 - d, 0.5), (0.0, 0.5)])
