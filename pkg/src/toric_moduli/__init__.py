"""Exact geometry of Delzant polygons and the metric space they form."""

from .delzant import (
    DelzantPolygon,
    congruence_fingerprint,
    congruent,
    corner_chop,
    delzant_triangle,
    edge_slide,
    hirzebruch,
    rational_length,
    validate,
)
from .errors import ToricError
from .geometry import (
    FloatPolygon,
    LatticeAffineMap,
    Point,
    Polygon,
    apply_map,
    area,
    dh_measure,
    hausdorff,
    sym_diff_distance,
)
from .io import parse_polygon, read_polygon, serialize_polygon, write_polygon
from .moduli import canonicalize, cauchy_limit, cauchy_sequence, connect, continuity_modulus, q_delta, sample
from .montecarlo import estimate_sym_diff
from .resolve import SupportOracle, delzant_approximate, rationalize, resolve_vertex, smooth

__version__ = "0.1.0"
