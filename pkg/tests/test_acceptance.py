"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import math
import time
from fractions import Fraction

import pytest

from gen import random_base, random_chops, random_delzant, random_map, rng_for
from toric_moduli.delzant import (
    DelzantPolygon,
    congruence_fingerprint,
    corner_chop,
    validate,
    vertex_frames,
)
from toric_moduli.geometry import (
    FloatPolygon,
    Polygon,
    apply_map,
    area,
    float_sym_diff,
    hausdorff,
    intersect,
    sym_diff_distance,
)
from toric_moduli.moduli import (
    canonicalize,
    cauchy_limit,
    cauchy_sequence,
    connect,
    continuity_modulus,
    sample,
    unchop,
)
from toric_moduli.montecarlo import estimate_sym_diff
from toric_moduli.resolve import SupportOracle, delzant_approximate, rationalize, smooth, vertex_defect


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def test_criterion_1_metric_axioms(report):
    t0 = time.perf_counter()
    rng = rng_for(1)
    polys = [random_delzant(rng) for _ in range(200)]
    bad = 0
    for i in range(len(polys)):
        P, Q, R = polys[i], polys[(i + 1) % 200], polys[(i + 2) % 200]
        dpq, dqp = sym_diff_distance(P, Q), sym_diff_distance(Q, P)
        bad += dpq != dqp
        bad += sym_diff_distance(P, P) != 0
        bad += (dpq == 0) != (P == Q)
        bad += sym_diff_distance(P, R) > dpq + sym_diff_distance(Q, R)
    # a chopped copy is a distinct polygon at positive distance
    for P in polys[:50]:
        f = vertex_frames(P)[0]
        C = corner_chop(P, 0, min(f.len1, f.len2) / 8)
        bad += sym_diff_distance(P, C) == 0
    dt = time.perf_counter() - t0
    report(1, bad == 0 and dt < 60, f"200 polygons, {bad} violations, {dt:.1f}s (limit 60s)")


def test_criterion_2_monte_carlo_oracle(report):
    t0 = time.perf_counter()
    rng = rng_for(2)
    worst = 0.0
    fails = 0
    for i in range(50):
        P = random_delzant(rng)
        Q = apply_map(random_map(rng), random_delzant(rng)) if i % 3 else random_chops(rng, P, 2)[0]
        exact = float(sym_diff_distance(P, Q))
        est = estimate_sym_diff(P, Q, samples=10**6, seed=i)
        sigma = est.binomial_sigma(exact)
        z = abs(est.value - exact) / sigma if sigma > 0 else (0.0 if est.value == exact else math.inf)
        worst = max(worst, z)
        fails += z > 4
    dt = time.perf_counter() - t0
    report(2, fails == 0 and dt < 120, f"50 pairs, max |z| = {worst:.2f} (limit 4), {dt:.1f}s (limit 120s)")


def test_criterion_3_agl_invariance(report):
    rng = rng_for(3)
    bad = 0
    for _ in range(100):
        m = random_map(rng)
        P, Q = random_delzant(rng), random_delzant(rng)
        mP, mQ = apply_map(m, P), apply_map(m, Q)
        bad += area(mP) != area(P)
        bad += sym_diff_distance(mP, mQ) != sym_diff_distance(P, Q)
        bad += congruence_fingerprint(DelzantPolygon.from_polygon(mP)) != congruence_fingerprint(P)
    report(3, bad == 0, f"100 random (m, P, Q), {bad} mismatches")


def test_criterion_4_chop_law(report):
    rng = rng_for(4)
    bad = 0
    done = 0
    while done < 200:
        P = random_delzant(rng, max_chops=3)
        frames = vertex_frames(P)
        i = rng.randrange(len(frames))
        f = frames[i]
        lim = min(f.len1, f.len2)
        eps = lim * Fraction(rng.randint(1, 15), 16)
        C = corner_chop(P, i, eps)
        bad += area(P) - area(C) != eps * eps / 2
        bad += sym_diff_distance(P, C) != eps * eps / 2
        new_edge = C.index_of(f.vertex + f.u2 * eps)
        back = unchop(C, new_edge)
        bad += back is None or back[0] != P or back[1] != eps
        done += 1
    report(4, bad == 0, f"{done} chops, {bad} failures")


def _battery():
    return [
        Polygon([(0, Fraction(-1, 2)), (2, Fraction(-1, 2)), (0, Fraction(1, 2))]),  # limit triangle
        Polygon([(0, 0), (1, 0), (0, 2)]),
        Polygon([(0, 0), (5, 0), (0, 1)]),
        Polygon([(0, 0), (3, 0), (3, 1), (0, 2)]),
        Polygon([(0, 0), (2, 1), (1, 3), (-1, 2)]),
        Polygon([(0, 0), (7, 2), (3, 5)]),
    ]


def test_criterion_5_resolution(report):
    ok = True
    notes = []
    for P in _battery():
        dmin = min(
            (a - b).norm2() for i, a in enumerate(P.vertices) for b in P.vertices[i + 1:]
        )
        defects = [vertex_defect(P, i) for i in range(len(P))]
        bound = sum(d - 1 for d in defects if d > 1)
        prev = None
        for k in range(3, 11):
            eps = Fraction(1, 2**k)
            if 4 * eps * eps >= dmin:
                continue
            R = smooth(P, eps)
            d = sym_diff_distance(P, R)
            inside = intersect(P, R) == R
            good = validate(R).is_delzant and inside and len(R) - len(P) <= bound
            good &= prev is None or d < prev
            if not good:
                notes.append(f"{P.vertices} eps={eps}")
            ok &= good
            prev = d
    report(5, ok, f"{len(_battery())} polygons x eps 2^-3..2^-10" + ("; failing " + "; ".join(notes) if notes else ""))


def test_criterion_6_classification_round_trip(report):
    rng = rng_for(6)
    bad = []
    for i in range(100):
        (family, params), B = random_base(rng)
        X, chops = random_chops(rng, B)
        Y = DelzantPolygon.from_polygon(apply_map(random_map(rng), X))
        dec = canonicalize(Y)
        good = dec.base.family == family and dec.base.params() == params
        good &= dec.chop_sizes() == sorted(e for _, e in chops)
        good &= sym_diff_distance(dec.replay(), dec.representative) == 0
        good &= apply_map(dec.witness, Y) == dec.representative
        if not good:
            bad.append(i)
    report(6, not bad, f"100 AGL images of base + chops, failures at {bad}")


def test_criterion_7_path_connectedness(report):
    t0 = time.perf_counter()
    rng = rng_for(7)
    bad = []
    for i in range(25):
        P, Q = random_delzant(rng, 3), random_delzant(rng, 3)
        path = connect(P, Q)
        dP, dQ = canonicalize(P), canonicalize(Q)
        good = sample(path, 0) == dP.representative and sample(path, 1) == dQ.representative
        for j in range(1001):
            t = Fraction(j, 1000)
            if path.is_degenerate(t):
                continue
            good &= validate(sample(path, t)).is_delzant
        mods = [continuity_modulus(path, n) for n in (10, 100, 1000)]
        if path.moves:
            good &= mods[0] > mods[1] > mods[2]
        else:
            good &= mods == [0, 0, 0]
        if not good:
            bad.append(i)
    dt = time.perf_counter() - t0
    report(7, not bad, f"25 pairs x 1001 samples, failures at {bad}, {dt:.1f}s")


def test_criterion_8_non_completeness(report):
    c, b, k = 1, 1, 2
    A = {n: cauchy_sequence(c, b, k, n) for n in range(1, 51)}
    bad = 0
    for n in A:
        for m in A:
            bad += sym_diff_distance(A[n], A[m]) != b * c * abs(Fraction(1, n) - Fraction(1, m))
    L = cauchy_limit(c, b, k)
    rep = validate(L)
    top = L.index_of((0, Fraction(1, 2)))
    ok = bad == 0 and not rep.is_delzant and rep.non_smooth_vertices == [(top, 2)] and vertex_defect(L, top) == 2
    report(8, ok, f"2500 pairs, {bad} law violations; limit defect {vertex_defect(L, top)} at (0, 1/2)")


def _monotone(xs, tol=1e-9):
    return all(b <= a + tol for a, b in zip(xs, xs[1:]))


def _sqrt2_polygon():
    return FloatPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, math.sqrt(2)), (0.0, 0.5)])


def test_criterion_9_completion_chain(report):
    t0 = time.perf_counter()
    disc = SupportOracle.disc()
    ok = True
    parts = []
    for eps in (0.2, 0.1, 0.05):
        A = delzant_approximate(disc, eps, seed=9)
        up = A.estimate.upper()
        good = validate(A.polygon).is_delzant and up <= eps
        ok &= good
        parts.append(f"eps={eps}: d<={up:.4f}")
    P = _sqrt2_polygon()
    R = rationalize(P, 1e-3)
    est = estimate_sym_diff(P, R, samples=10**6, seed=9)
    good = len(R) == len(P) and float_sym_diff(P, R) <= 1e-3 and est.upper() <= 1e-3
    ok &= good
    parts.append(f"sqrt2 polygon: d={float_sym_diff(P, R):.2e}")
    dt = time.perf_counter() - t0
    ok &= dt < 120
    report(9, ok, ", ".join(parts) + f", {dt:.1f}s (limit 120s)")


def test_criterion_10_hausdorff_consistency(report):
    ok = True
    # Cauchy family against its limit
    L = cauchy_limit(1, 1, 2)
    ds, hs = [], []
    for n in (1, 2, 4, 8, 16, 32, 50):
        A = cauchy_sequence(1, 1, 2, n)
        ds.append(float(sym_diff_distance(A, L)))
        hs.append(hausdorff(A, L))
    ok &= _monotone(ds) and _monotone(hs) and ds[-1] < 0.05 and hs[-1] < 0.05
    # completion chain against the disc
    disc = SupportOracle.disc()
    dd, hd = [], []
    for eps in (0.2, 0.1, 0.05, 0.025):
        A = delzant_approximate(disc, eps, samples=2 * 10**5, seed=10)
        dd.append(A.estimate.value)
        hd.append(hausdorff(disc, A.polygon))
    ok &= _monotone(dd) and _monotone(hd)
    # rationalization of the sqrt(2) polygon
    P = _sqrt2_polygon()
    rd, rh = [], []
    for eps in (1e-1, 1e-2, 1e-3, 1e-4):
        R = rationalize(P, eps)
        rd.append(float_sym_diff(P, R))
        rh.append(hausdorff(P, R))
    ok &= _monotone(rd) and _monotone(rh)
    detail = (
        f"cauchy d {ds[0]:.3g}->{ds[-1]:.3g}, dH {hs[0]:.3g}->{hs[-1]:.3g}; "
        f"disc d {dd[0]:.3g}->{dd[-1]:.3g}, dH {hd[0]:.3g}->{hd[-1]:.3g}; "
        f"rationalize d {rd[0]:.3g}->{rd[-1]:.3g}, dH {rh[0]:.3g}->{rh[-1]:.3g}"
    )
    report(10, ok, detail)
