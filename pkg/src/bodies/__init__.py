"""Symmetric convex bodies: representations and primitive operations"""

from .base import ConvexBody, maximize_ratio, sample_directions, circle_directions
from .polygon import Polygon2, snap
from .polytope import Polytope3, Facet, facet_matches, embed_polygon_3d
from .gauge import (
    P_INF,
    GaugeBody,
    LpNorm,
    LinearImage,
    IntersectionGauge,
    HullGauge,
    Scaled,
    inf_convolution,
)
from .ops import (
    gauge,
    support,
    enclosing_factor,
    contains,
    intersect,
    hull_union,
    scale,
    linear_image,
    lp_ball,
    polygonize,
    gauge_equal,
    supporting_functional,
)
from .codec import parse_body, load_body, dump_body

__all__ = [
    # Representations
    "ConvexBody",
    "Polygon2",
    "Polytope3",
    "Facet",
    "GaugeBody",
    "LpNorm",
    "LinearImage",
    "IntersectionGauge",
    "HullGauge",
    "Scaled",
    "P_INF",
    # Operations
    "gauge",
    "support",
    "enclosing_factor",
    "contains",
    "intersect",
    "hull_union",
    "scale",
    "linear_image",
    "lp_ball",
    "polygonize",
    "gauge_equal",
    "supporting_functional",
    "inf_convolution",
    # Helpers
    "maximize_ratio",
    "sample_directions",
    "circle_directions",
    "snap",
    "facet_matches",
    "embed_polygon_3d",
    # JSON
    "parse_body",
    "load_body",
    "dump_body",
]
