"""Extreme geodesics B_λ / C_λ, their verification and export"""

from .paths import (
    GeodesicPath,
    b_lambda,
    c_lambda,
    build_path,
    constant_path,
    is_intermediate,
    join_geodesics,
    lp_path,
)
from .checks import (
    inclusion_chain_check,
    extreme_distance_check,
    geodesic_product_check,
    dyadic_lengths,
    path_length,
    sandwich_check,
    kj_gauges,
    random_partition,
)
from .export import export_path, load_path, render_svg, body_filename

__all__ = [
    "GeodesicPath",
    "b_lambda",
    "c_lambda",
    "build_path",
    "constant_path",
    "is_intermediate",
    "join_geodesics",
    "lp_path",
    "inclusion_chain_check",
    "extreme_distance_check",
    "geodesic_product_check",
    "dyadic_lengths",
    "path_length",
    "sandwich_check",
    "kj_gauges",
    "random_partition",
    "export_path",
    "load_path",
    "render_svg",
    "body_filename",
]
