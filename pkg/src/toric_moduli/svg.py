"""Static SVG snapshots of polygons and path samples."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


def _coords(P) -> np.ndarray:
    return np.asarray(P.float_vertices(), dtype=float)


def render_svg(polygons, labels=None, size: int = 480, margin: int = 24, fill_opacity: float = 0.15) -> str:
    """Draw polygons (exact or float) in one picture, y axis pointing up."""
    polys = [_coords(P) for P in polygons]
    if not polys:
        raise ValueError("nothing to draw")
    allv = np.vstack(polys)
    lo, hi = allv.min(axis=0), allv.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    scale = (size - 2 * margin) / span

    def tx(p):
        return margin + (p[0] - lo[0]) * scale, size - margin - (p[1] - lo[1]) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, V in enumerate(polys):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join("{:.4f},{:.4f}".format(*tx(p)) for p in V)
        out.append(
            f'<polygon points="{pts}" fill="{color}" fill-opacity="{fill_opacity}" stroke="{color}" stroke-width="1.5"/>'
        )
        if labels is not None and i < len(labels):
            x, y = tx(V.mean(axis=0))
            out.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="12" fill="{color}">{labels[i]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_path_svg(path, frames: int = 9, size: int = 480) -> str:
    from .moduli import sample

    ts = [Fraction(i, frames - 1) for i in range(frames)]
    return render_svg([sample(path, t) for t in ts], [f"t={t}" for t in ts], size=size, fill_opacity=0.05)


def write_svg(filename: str, text: str):
    with open(filename, "w", encoding="utf-8") as fh:
        fh.write(text)
