"""JSON documents for polygons and paths (format_version 1).

Rational coordinates travel as strings ``"p/q"`` (or ``"p"``) so that no
binary rounding can enter; float polygons use plain JSON numbers.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .delzant import DelzantPolygon
from .errors import InvalidPolygon, ParseError
from .geometry import FloatPolygon, LatticeAffineMap, Point, Polygon
from .moduli import (
    ChopHomotopy,
    EdgeSlide,
    HirzebruchStep,
    Interpolate,
    Move,
    Path,
    Reverse,
    Scale,
    SquareToTriangle,
    Translate,
    UnchopHomotopy,
)

FORMAT_VERSION = 1


class InvariantViolation(InvalidPolygon):
    """Document parsed but its vertices do not form a strictly convex polygon."""


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s, where: str = "value") -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"{where}: expected a rational string like \"p/q\", got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: {s!r} is not a rational number") from None


def polygon_to_doc(P, name: str | None = None, **extra) -> dict:
    if isinstance(P, FloatPolygon):
        doc = {"format_version": FORMAT_VERSION, "kind": "float", "vertices": P.vertices.tolist()}
    else:
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "rational",
            "vertices": [[format_rat(v.x), format_rat(v.y)] for v in P.vertices],
        }
    if name is not None:
        doc["name"] = name
    doc.update(extra)
    return doc


_PAIR = re.compile(r"\[\s+([^\[\]{},\s]+),\s+([^\[\]{},\s]+)\s+\]")


def _dumps(doc) -> str:
    # indented, but with every coordinate pair kept on one line
    return _PAIR.sub(r"[\1, \2]", json.dumps(doc, indent=2)) + "\n"


def serialize_polygon(P, name: str | None = None, **extra) -> str:
    return _dumps(polygon_to_doc(P, name, **extra))


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("line 1: top-level value must be an object")
    return doc


def polygon_from_doc(doc: dict):
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"format_version: unsupported version {version!r}")
    kind = doc.get("kind", "rational")
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise ParseError("vertices: expected a list of coordinate pairs")
    for i, v in enumerate(verts):
        if not isinstance(v, list) or len(v) != 2:
            raise ParseError(f"vertices[{i}]: expected a pair")
    try:
        if kind == "rational":
            pts = [(parse_rat(x, f"vertices[{i}][0]"), parse_rat(y, f"vertices[{i}][1]")) for i, (x, y) in enumerate(verts)]
            return Polygon(pts)
        if kind == "float":
            for i, (x, y) in enumerate(verts):
                for j, c in enumerate((x, y)):
                    if isinstance(c, bool) or not isinstance(c, (int, float)):
                        raise ParseError(f"vertices[{i}][{j}]: expected a number, got {c!r}")
            return FloatPolygon(verts)
    except InvalidPolygon as exc:
        if isinstance(exc, InvariantViolation):
            raise
        raise InvariantViolation(str(exc), exc.index) from None
    raise ParseError(f"kind: expected \"rational\" or \"float\", got {kind!r}")


def parse_polygon(text: str):
    """Parse a polygon document into a :class:`Polygon` or :class:`FloatPolygon`."""
    return polygon_from_doc(_load(text))


def read_polygon(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_polygon(fh.read())


def write_polygon(path: str, P, name: str | None = None, **extra):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_polygon(P, name, **extra))


# ----------------------------------------------------------------------------
# maps and paths


def map_to_record(m: LatticeAffineMap | None):
    if m is None:
        return None
    return {"matrix": [[m.a11, m.a12], [m.a21, m.a22]], "translation": [format_rat(m.c.x), format_rat(m.c.y)]}


def map_from_record(rec) -> LatticeAffineMap | None:
    if rec is None:
        return None
    try:
        (a, b), (c, d) = rec["matrix"]
        tx, ty = rec["translation"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("map: expected {\"matrix\": [[a,b],[c,d]], \"translation\": [x, y]}") from None
    return LatticeAffineMap(int(a), int(b), int(c), int(d), Point(parse_rat(tx, "translation"), parse_rat(ty, "translation")))


def _pt(p: Point) -> list[str]:
    return [format_rat(p.x), format_rat(p.y)]


def _poly(doc, where) -> DelzantPolygon:
    P = polygon_from_doc(doc)
    if not isinstance(P, Polygon):
        raise ParseError(f"{where}: path polygons must be rational")
    return DelzantPolygon.from_polygon(P)


def move_to_record(m: Move) -> dict:
    if isinstance(m, Translate):
        return {"type": m.kind, "polygon": polygon_to_doc(m.polygon), "vector": _pt(m.vector)}
    if isinstance(m, Scale):
        return {"type": m.kind, "polygon": polygon_to_doc(m.polygon), "s0": format_rat(m.s0), "s1": format_rat(m.s1)}
    if isinstance(m, EdgeSlide):
        return {"type": m.kind, "polygon": polygon_to_doc(m.polygon), "edge": m.edge, "t0": format_rat(m.t0), "t1": format_rat(m.t1)}
    if isinstance(m, Interpolate):
        return {"type": m.kind, "a0": format_rat(m.a0), "b0": format_rat(m.b0), "a1": format_rat(m.a1), "b1": format_rat(m.b1), "k": m.k}
    if isinstance(m, (ChopHomotopy, UnchopHomotopy)):
        return {"type": m.kind, "polygon": polygon_to_doc(m.polygon), "vertex": _pt(m.vertex), "eps": format_rat(m.eps)}
    if isinstance(m, HirzebruchStep):
        return {"type": m.kind, "a": format_rat(m.a), "b": format_rat(m.b), "k": m.k}
    if isinstance(m, SquareToTriangle):
        return {"type": m.kind, "lam": format_rat(m.lam)}
    if isinstance(m, Reverse):
        return {"type": m.kind, "move": move_to_record(m.move)}
    raise TypeError(f"unknown move {m!r}")


def move_from_record(rec: dict, where: str = "move") -> Move:
    try:
        kind = rec["type"]
        r = lambda key: parse_rat(rec[key], f"{where}.{key}")  # noqa: E731
        if kind == "translate":
            v = rec["vector"]
            return Translate(_poly(rec["polygon"], where), Point(parse_rat(v[0]), parse_rat(v[1])))
        if kind == "scale":
            return Scale(_poly(rec["polygon"], where), r("s0"), r("s1"))
        if kind == "slide":
            return EdgeSlide(_poly(rec["polygon"], where), int(rec["edge"]), r("t0"), r("t1"))
        if kind == "interpolate":
            return Interpolate(r("a0"), r("b0"), r("a1"), r("b1"), int(rec["k"]))
        if kind in ("chop", "unchop"):
            cls = ChopHomotopy if kind == "chop" else UnchopHomotopy
            v = rec["vertex"]
            return cls(_poly(rec["polygon"], where), Point(parse_rat(v[0]), parse_rat(v[1])), r("eps"))
        if kind == "hirzebruch-step":
            return HirzebruchStep(r("a"), r("b"), int(rec["k"]))
        if kind == "square-to-triangle":
            return SquareToTriangle(r("lam"))
        if kind == "reverse":
            return Reverse(move_from_record(rec["move"], where + ".move"))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"{where}: malformed move record ({exc})") from None
    raise ParseError(f"{where}.type: unknown move type {kind!r}")


def path_to_doc(path: Path) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "source": polygon_to_doc(path.source),
        "target": polygon_to_doc(path.target),
        "source_witness": map_to_record(path.source_witness),
        "target_witness": map_to_record(path.target_witness),
        "moves": [move_to_record(m) for m in path.moves],
    }


def serialize_path(path: Path) -> str:
    return _dumps(path_to_doc(path))


def parse_path(text: str) -> Path:
    doc = _load(text)
    if doc.get("format_version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ParseError("format_version: unsupported version")
    for key in ("source", "target", "moves"):
        if key not in doc:
            raise ParseError(f"{key}: missing")
    moves = [move_from_record(m, f"moves[{i}]") for i, m in enumerate(doc["moves"])]
    return Path(
        moves,
        _poly(doc["source"], "source"),
        _poly(doc["target"], "target"),
        map_from_record(doc.get("source_witness")),
        map_from_record(doc.get("target_witness")),
    )


def read_path(path: str) -> Path:
    with open(path, encoding="utf-8") as fh:
        return parse_path(fh.read())
