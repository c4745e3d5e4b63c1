"""``delzant`` command-line front end.

Exit status: 0 on success, 1 on a domain error (anything raised as
:class:`ToricError`, or an unreadable file), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .delzant import (
    DelzantPolygon,
    congruence_fingerprint,
    congruent,
    corner_chop,
    edge_slide,
    hirzebruch,
    slide_interval,
    validate,
)
from .errors import ParameterOutOfRange, ToricError
from .geometry import FloatPolygon, Polygon, dh_measure, float_sym_diff, hausdorff, sym_diff_distance
from .moduli import (
    HirzebruchStep,
    SquareToTriangle,
    canonicalize,
    cauchy_limit,
    cauchy_sequence,
    connect,
    continuity_modulus,
    q_delta,
    q_delta_size,
    sample,
)
from .montecarlo import DEFAULT_SAMPLES, estimate_sym_diff
from .resolve import SupportOracle, _exact_if_small, delzant_approximate, rationalize, resolve_vertex, smooth
from .svg import render_path_svg, render_svg, write_svg

fmt = io.format_rat


def number(text: str) -> Fraction:
    """Rational ``p/q`` or decimal literal, parsed exactly."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q or a decimal, got {text!r}") from None


def seed_type(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return s


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def decimal(x: float, tol: float) -> str:
    return f"{x:.12g} (tolerance {tol:g})"


def _exact(P):
    """Rational polygon for float inputs whose coordinates are short dyadics, else ``None``."""
    if isinstance(P, Polygon):
        return P
    return _exact_if_small(P, 2**20)


def _delzant(P) -> DelzantPolygon:
    E = _exact(P)
    if E is None:
        raise ParameterOutOfRange("this command needs a rational polygon")
    return DelzantPolygon.from_polygon(E)


def _need_eps(args) -> Fraction:
    if args.epsilon is None:
        raise ParameterOutOfRange("--epsilon is required for this command")
    return args.epsilon


def _emit_polygon(args, P, **extra):
    text = io.serialize_polygon(P, **extra)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _svg(args, polygons, labels=None):
    if args.svg:
        write_svg(args.svg, render_svg(polygons, labels))


# ----------------------------------------------------------------------------
# commands


def cmd_validate(args):
    P = io.read_polygon(args.file)
    E = _exact(P)
    if E is None:
        print("delzant: false")
        print("rational: false")
    else:
        rep = validate(E)
        print(f"delzant: {str(rep.is_delzant).lower()}")
        print(f"rational: {str(rep.is_rational).lower()}")
        if rep.is_rational:
            print("determinants: " + " ".join(str(d) for d in rep.determinants))
            bad = ", ".join(f"{i} (defect {d})" for i, d in rep.non_smooth_vertices) or "none"
            print(f"non-smooth vertices: {bad}")
    _svg(args, [P])


def cmd_distance(args):
    P, Q = io.read_polygon(args.a), io.read_polygon(args.b)
    if isinstance(P, Polygon) and isinstance(Q, Polygon):
        print(fmt(sym_diff_distance(P, Q)))
    else:
        print(decimal(float_sym_diff(P, Q), args.tolerance))
    _svg(args, [P, Q], ["A", "B"])


def cmd_hausdorff(args):
    P, Q = io.read_polygon(args.a), io.read_polygon(args.b)
    print(decimal(hausdorff(P, Q), args.tolerance))
    _svg(args, [P, Q], ["A", "B"])


def cmd_dh(args):
    P = io.read_polygon(args.file)
    E = _exact(P)
    if E is None:
        raise ParameterOutOfRange("dh needs a rational polygon")
    print(fmt(dh_measure(E, tuple(args.rect))))


def cmd_chop(args):
    P = _delzant(io.read_polygon(args.file))
    R = corner_chop(P, args.vertex, _need_eps(args))
    _emit_polygon(args, R)
    _svg(args, [P, R], ["before", "after"])


def cmd_slide(args):
    P = _delzant(io.read_polygon(args.file))
    lo, hi = slide_interval(P, args.edge)
    R = edge_slide(P, args.edge, args.offset)
    interval = [None if lo is None else fmt(lo), None if hi is None else fmt(hi)]
    _emit_polygon(args, R, slide_interval=interval)
    _svg(args, [P, R], ["before", "after"])


def cmd_resolve(args):
    P = _exact(io.read_polygon(args.file))
    if P is None:
        raise ParameterOutOfRange("resolve needs a rational polygon")
    R, trace = resolve_vertex(P, args.vertex, _need_eps(args))
    info = {
        "alpha_sequence": trace.alpha_sequence,
        "new_edges": trace.new_edges,
        "cut_offsets": [fmt(h) for h in trace.cut_offsets],
        "loss": fmt(sym_diff_distance(P, R)),
    }
    _emit_polygon(args, R, resolution=info)
    _svg(args, [P, R], ["input", "resolved"])


def cmd_smooth(args):
    P = _exact(io.read_polygon(args.file))
    if P is None:
        raise ParameterOutOfRange("smooth needs a rational polygon")
    R, rep = smooth(P, _need_eps(args), report=True)
    info = {
        "added_edges": rep.added_edges,
        "edge_bound": rep.edge_bound,
        "loss": fmt(rep.loss),
        "loss_bound": fmt(rep.loss_bound),
    }
    _emit_polygon(args, R, smoothing=info)
    _svg(args, [P, R], ["input", "smoothed"])


def _map_text(m) -> str:
    return f"matrix [[{m.a11}, {m.a12}], [{m.a21}, {m.a22}]] translation ({fmt(m.c.x)}, {fmt(m.c.y)})"


def cmd_congruent(args):
    P, Q = _delzant(io.read_polygon(args.a)), _delzant(io.read_polygon(args.b))
    m = congruent(P, Q)
    print(f"congruent: {'true' if m is not None else 'false'}")
    if m is not None:
        print("map: " + _map_text(m))


def cmd_fingerprint(args):
    P = _delzant(io.read_polygon(args.file))
    n, A, lengths = congruence_fingerprint(P)
    print(f"edges: {n}")
    print(f"area: {fmt(A)}")
    print("lengths: " + " ".join(fmt(x) for x in lengths))


def cmd_canonicalize(args):
    P = _delzant(io.read_polygon(args.file))
    dec = canonicalize(P)
    params = " ".join(f"{k}={fmt(v) if isinstance(v, Fraction) else v}" for k, v in zip(_param_names(dec.base), dec.base.params()))
    print(f"base: {dec.base.family} {params}")
    print(f"chops: {len(dec.chops)}")
    for v, eps in dec.chops:
        print(f"  vertex ({fmt(v.x)}, {fmt(v.y)}) size {fmt(eps)}")
    print("witness: " + _map_text(dec.witness))
    _svg(args, dec.stages())


def _param_names(base):
    return ("lambda",) if base.family == "triangle" else ("a", "b", "k")


def cmd_connect(args):
    P, Q = _delzant(io.read_polygon(args.a)), _delzant(io.read_polygon(args.b))
    path = connect(P, Q)
    text = io.serialize_path(path)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"moves: {len(path.moves)}")
    else:
        sys.stdout.write(text)
    if args.svg:
        write_svg(args.svg, render_path_svg(path))


def cmd_sample(args):
    path = io.read_path(args.path)
    if not 0 <= args.t <= 1:
        raise ParameterOutOfRange("t must lie in [0, 1]")
    R = sample(path, args.t)
    _emit_polygon(args, R)
    _svg(args, [R])


def cmd_modulus(args):
    path = io.read_path(args.path)
    print(fmt(continuity_modulus(path, args.n)))


def cmd_approx(args):
    eps = float(_need_eps(args))
    if args.source == "disc":
        C = SupportOracle.disc(tuple(float(c) for c in args.center), float(args.radius))
    elif args.file is None:
        raise ParameterOutOfRange(f"approx {args.source} needs an input file")
    elif args.source == "hull":
        with open(args.file, encoding="utf-8") as fh:
            doc = io._load(fh.read())
        pts = doc.get("points", doc.get("vertices"))
        if not isinstance(pts, list):
            raise io.ParseError("points: expected a list of coordinate pairs")
        C = SupportOracle.from_polygon(FloatPolygon(_hull(pts)))
    else:
        C = io.read_polygon(args.file)
    A = delzant_approximate(C, eps, samples=args.samples, seed=args.seed)
    stages = [{"stage": s.name, "budget": s.budget, "cost": s.estimate, "note": s.note} for s in A.stages]
    est = None if A.estimate is None else {"value": A.estimate.value, "stderr": A.estimate.stderr, "upper95": A.estimate.upper()}
    _emit_polygon(args, A.polygon, stages=stages, estimate=est)
    if args.svg:
        write_svg(args.svg, render_svg([A.polygon], ["approximation"]))


def _hull(pts):
    from .geometry import _monotone_chain

    return _monotone_chain(sorted({(float(x), float(y)) for x, y in pts}))


def cmd_demo(args):
    DEMOS[args.name](args)


def demo_cauchy(args):
    c, b, k = args.c, args.b, args.k
    An, Am = cauchy_sequence(c, b, k, args.n), cauchy_sequence(c, b, k, args.m)
    d = sym_diff_distance(An, Am)
    law = b * c * abs(Fraction(1, args.n) - Fraction(1, args.m))
    print(f"A_{args.n} vertices: " + _verts(An))
    print(f"A_{args.m} vertices: " + _verts(Am))
    print(f"d = {fmt(d)}")
    print(f"b*c*|1/n - 1/m| = {fmt(law)}")
    L = cauchy_limit(c, b, k)
    rep = validate(L)
    print("limit vertices: " + _verts(L))
    print(f"limit delzant: {str(rep.is_delzant).lower()} (determinants {' '.join(map(str, rep.determinants))})")
    _svg(args, [An, Am, L], [f"A_{args.n}", f"A_{args.m}", "limit"])


def demo_qdelta(args):
    eps = float(args.epsilon) if args.epsilon is not None else 0.1
    Q = q_delta(eps)
    square = hirzebruch(1, 1, 0)
    delta = q_delta_size(eps)
    print(f"epsilon = {eps:g}")
    print(f"delta = {decimal(delta, args.tolerance)}")
    print(f"d(Q_delta, square) = {decimal(float_sym_diff(Q, square), args.tolerance)}")
    est = estimate_sym_diff(Q, square, samples=args.samples, seed=args.seed)
    print(f"monte-carlo estimate = {est.value:.6g} +- {est.stderr:.2g}")
    R = rationalize(Q, eps / 100)
    print(f"rational approximation within {eps / 100:g}: " + _verts(R))
    print(f"rational approximation delzant: {str(validate(R).is_delzant).lower()}")
    _svg(args, [square, Q], ["square", "Q_delta"])


def demo_hirzebruch_step(args):
    step = HirzebruchStep(args.a, args.b, args.k)
    ok = True
    for i in range(args.steps + 1):
        t = Fraction(i, args.steps)
        X = step.at(t)
        good = validate(X).is_delzant
        ok &= good
        print(f"t = {fmt(t)}: {len(X)} edges, delzant {str(good).lower()}")
    print(f"all delzant: {str(ok).lower()}")
    _svg(args, [step.at(Fraction(0)), step.at(Fraction(1, 2)), step.at(Fraction(1))], ["start", "H'", "end"])


def demo_square_to_triangle(args):
    move = SquareToTriangle(args.lam)
    for i in range(args.steps + 1):
        t = Fraction(i, args.steps)
        X = move.at(t)
        tag = " (declared degenerate endpoint)" if t in move.degenerate else ""
        print(f"t = {fmt(t)}: {len(X)} edges, delzant {str(validate(X).is_delzant).lower()}{tag}")
    _svg(args, [move.at(Fraction(0)), move.at(Fraction(1, 2)), move.at(Fraction(1))])


def _verts(P) -> str:
    return " ".join(f"({fmt(v.x)}, {fmt(v.y)})" for v in P.vertices)


DEMOS = {
    "cauchy": demo_cauchy,
    "qdelta": demo_qdelta,
    "hirzebruch-step": demo_hirzebruch_step,
    "square-to-triangle": demo_square_to_triangle,
}


def cmd_render(args):
    items = []
    for name in args.files:
        with open(name, encoding="utf-8") as fh:
            text = fh.read()
        doc = io._load(text)
        if "moves" in doc:
            svg = render_path_svg(io.parse_path(text))
            if len(args.files) == 1:
                _write_or_print(args, svg)
                return
            raise ParameterOutOfRange("render takes a single path document")
        items.append(io.polygon_from_doc(doc))
    _write_or_print(args, render_svg(items, [str(i) for i in range(len(items))]))


def _write_or_print(args, svg):
    if args.svg:
        write_svg(args.svg, svg)
    else:
        sys.stdout.write(svg)


# ----------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--svg", metavar="PATH", help="also write an SVG rendering")
    common.add_argument("--seed", type=seed_type, default=0, help="Monte-Carlo seed (default 0)")
    common.add_argument("--samples", type=positive_int, default=DEFAULT_SAMPLES, help="Monte-Carlo samples (default 10^6)")
    common.add_argument("--epsilon", type=number, help="size or tolerance, rational p/q or decimal")
    common.add_argument("--tolerance", type=float, default=1e-9, help="stated tolerance of float outputs")

    p = argparse.ArgumentParser(prog="delzant", description="Exact tools for Delzant polygons and their moduli.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check the Delzant condition")
    sp.add_argument("file")
    for name, func, h in (("distance", cmd_distance, "symmetric-difference area"), ("hausdorff", cmd_hausdorff, "Hausdorff distance")):
        sp = add(name, func, h)
        sp.add_argument("a")
        sp.add_argument("b")
    sp = add("dh", cmd_dh, "Duistermaat-Heckman measure of a rectangle")
    sp.add_argument("file")
    sp.add_argument("--rect", nargs=4, type=number, required=True, metavar=("X0", "Y0", "X1", "Y1"))
    sp = add("chop", cmd_chop, "corner chop of size --epsilon")
    sp.add_argument("file")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--out")
    sp = add("slide", cmd_slide, "move an edge along its normal")
    sp.add_argument("file")
    sp.add_argument("--edge", type=int, required=True)
    sp.add_argument("--offset", type=number, required=True)
    sp.add_argument("--out")
    sp = add("resolve", cmd_resolve, "resolve one non-smooth vertex")
    sp.add_argument("file")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--out")
    sp = add("smooth", cmd_smooth, "resolve every non-smooth vertex")
    sp.add_argument("file")
    sp.add_argument("--out")
    sp = add("congruent", cmd_congruent, "AGL(2,Z) congruence test")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("fingerprint", cmd_fingerprint, "congruence invariants")
    sp.add_argument("file")
    sp = add("canonicalize", cmd_canonicalize, "reduce to a triangle or trapezoid plus chops")
    sp.add_argument("file")
    sp = add("connect", cmd_connect, "explicit path between two Delzant polygons")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--out")
    sp = add("sample", cmd_sample, "evaluate a path document")
    sp.add_argument("path")
    sp.add_argument("--t", type=number, required=True)
    sp.add_argument("--out")
    sp = add("modulus", cmd_modulus, "continuity modulus of a path on N+1 samples")
    sp.add_argument("path")
    sp.add_argument("--n", type=positive_int, default=100)
    sp = add("approx", cmd_approx, "Delzant approximation of a convex body")
    sp.add_argument("source", choices=["disc", "hull", "file"])
    sp.add_argument("file", nargs="?")
    sp.add_argument("--radius", type=number, default=Fraction(1))
    sp.add_argument("--center", type=number, nargs=2, default=[Fraction(0), Fraction(0)])
    sp.add_argument("--out")
    sp = add("demo", cmd_demo, "worked examples")
    sp.add_argument("name", choices=sorted(DEMOS))
    sp.add_argument("--c", type=number, default=Fraction(1))
    sp.add_argument("--b", type=number, default=Fraction(1))
    sp.add_argument("--a", type=number, default=Fraction(2))
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--n", type=positive_int, default=5)
    sp.add_argument("--m", type=positive_int, default=7)
    sp.add_argument("--lam", type=number, default=Fraction(1))
    sp.add_argument("--steps", type=positive_int, default=8)
    sp = add("render", cmd_render, "SVG snapshot of polygon or path documents")
    sp.add_argument("files", nargs="+")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ToricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
