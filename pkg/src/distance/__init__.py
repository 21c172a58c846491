"""Fixed-position and Banach–Mazur distances, canonical positioning"""

from .fixed import (
    PositionedPair,
    fixed_position_distance,
    fixed_position_factors,
    positioned_by_identity,
)
from .optimizer import bm_distance, canonical_position
from .lp import known_lp_distance

__all__ = [
    "PositionedPair",
    "fixed_position_distance",
    "fixed_position_factors",
    "positioned_by_identity",
    "bm_distance",
    "canonical_position",
    "known_lp_distance",
]
