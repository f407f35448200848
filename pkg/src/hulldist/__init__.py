"""hulldist: certified gauge Hausdorff distance from convex hull in the plane.

Computes d^(K)(A) = sup_{x in conv(A)} inf_{a in A} |x - a|_K for compact
sets built from points, segments, and convex polygons, under l_p, polygonal,
and ellipse gauges, together with the constructions used to verify the
subadditivity bounds, their sharpness, and the equality conditions.
"""

from .backend import backend_name
from .distance import (
    CertifiedValue,
    grid_oracle,
    haus_dist_certified,
    haus_dist_l2_exact,
    min_dist_to_set,
)
from .gauges import (
    EllipseGauge,
    Gauge,
    GaugeTraits,
    LpGauge,
    PolytopeGauge,
    boundary_point,
    gauge_from_json,
    gauge_norm,
    gauge_traits,
    lp,
    square_gauge,
)
from .geometry import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    CompactSet,
    ConvexPolygon,
    Segment,
    ToleranceConfig,
    affine_dimension,
    convex_hull,
    minkowski_sum,
    point_in_convex_polygon,
    set_average,
)
from .serialization import compact_set_from_json, compact_set_to_json

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY",
    "CertifiedValue",
    "CompactSet",
    "ConvexPolygon",
    "EllipseGauge",
    "Gauge",
    "GaugeTraits",
    "INSIDE",
    "LpGauge",
    "OUTSIDE",
    "PolytopeGauge",
    "Segment",
    "ToleranceConfig",
    "affine_dimension",
    "backend_name",
    "boundary_point",
    "compact_set_from_json",
    "compact_set_to_json",
    "convex_hull",
    "gauge_from_json",
    "gauge_norm",
    "gauge_traits",
    "grid_oracle",
    "haus_dist_certified",
    "haus_dist_l2_exact",
    "lp",
    "min_dist_to_set",
    "minkowski_sum",
    "point_in_convex_polygon",
    "set_average",
    "square_gauge",
]
