"""Seeded Monte-Carlo estimates of symmetric-difference areas.

Used wherever exact areas are out of reach (irrational bodies) and as an
independent check of the exact kernel.  Deterministic for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import FloatPolygon, Polygon

DEFAULT_SAMPLES = 10**6


@dataclass(frozen=True)
class MCEstimate:
    value: float
    stderr: float
    samples: int
    box_area: float

    def upper(self, z: float = 1.96) -> float:
        """One-sided upper confidence bound (95% for the default z)."""
        return self.value + z * self.stderr

    def binomial_sigma(self, exact: float) -> float:
        """Standard deviation of the estimator if the true value were ``exact``."""
        p = min(max(exact / self.box_area, 0.0), 1.0)
        return self.box_area * math.sqrt(p * (1 - p) / self.samples)


def _membership(region):
    if isinstance(region, Polygon):
        return FloatPolygon.from_polygon(region).contains
    return region.contains


def _bbox(region):
    b = region.bbox()
    return tuple(float(x) for x in b)


def estimate_sym_diff(A, B, samples: int = DEFAULT_SAMPLES, seed: int = 0, chunk: int = 1 << 18) -> MCEstimate:
    """Estimate the area of ``A`` xor ``B`` by uniform sampling of their joint bounding box.

    Regions are exact polygons, float polygons or anything exposing
    ``contains(xy)`` (vectorised) and ``bbox()``.
    """
    ax0, ay0, ax1, ay1 = _bbox(A)
    bx0, by0, bx1, by1 = _bbox(B)
    x0, y0, x1, y1 = min(ax0, bx0), min(ay0, by0), max(ax1, bx1), max(ay1, by1)
    box = (x1 - x0) * (y1 - y0)
    in_a, in_b = _membership(A), _membership(B)
    rng = np.random.default_rng(seed)
    hits = 0
    left = samples
    while left > 0:
        m = min(chunk, left)
        xy = rng.random((m, 2))
        xy[:, 0] = x0 + xy[:, 0] * (x1 - x0)
        xy[:, 1] = y0 + xy[:, 1] * (y1 - y0)
        hits += int(np.count_nonzero(in_a(xy) != in_b(xy)))
        left -= m
    p = hits / samples
    return MCEstimate(box * p, box * math.sqrt(p * (1 - p) / samples), samples, box)
