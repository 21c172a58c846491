"""
Fixed-position distance and positioned pairs.

The fixed-position distance of two bodies is the distortion of the identity
map after the optimal scalar: with r = enclosing_factor(b, a) (a ⊆ r·b) and
s = enclosing_factor(a, b) (b ⊆ s·a), the best scaled copy c·b gives r·s.
It is an upper bound on the Banach–Mazur distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from src.bodies import ConvexBody, enclosing_factor, scale
from src.core.errors import InputError
from src.core.guards import check_same_dimension
from src.utils.config import section
from src.utils.logging import get_logger

logger = get_logger(__name__)


def fixed_position_factors(a: ConvexBody, b: ConvexBody, samples: Optional[int] = None) -> Tuple[float, float]:
    """(r, s) with a ⊆ r·b and b ⊆ s·a, both minimal."""
    check_same_dimension(a, b)
    return enclosing_factor(b, a, samples), enclosing_factor(a, b, samples)


def fixed_position_distance(a: ConvexBody, b: ConvexBody, samples: Optional[int] = None) -> float:
    r, s = fixed_position_factors(a, b, samples)
    return max(1.0, r * s)


@dataclass(frozen=True)
class PositionedPair:
    """
    Two unit balls with B_E ⊆ B_F ⊆ d·B_E.

    ``converged`` is False when the positioning came from an optimizer run
    that did not converge; the inclusions still hold for the returned d.
    """
    ball_E: ConvexBody
    ball_F: ConvexBody
    d: float
    converged: bool = True

    def __post_init__(self):
        check_same_dimension(self.ball_E, self.ball_F)
        slack = float(section("tolerances")["inclusion"])
        if self.d < 1.0 - slack:
            raise InputError(f"a positioned pair needs d ≥ 1, got {self.d}")
        lower = enclosing_factor(self.ball_F, self.ball_E)
        if lower > 1.0 + slack:
            raise InputError(
                "B_E is not contained in B_F", {"enclosing_factor": lower}
            )
        upper = enclosing_factor(self.ball_E, self.ball_F)
        if upper > self.d * (1.0 + slack):
            raise InputError(
                "B_F is not contained in d·B_E", {"enclosing_factor": upper, "d": self.d}
            )

    @property
    def dim(self) -> int:
        return self.ball_E.dim

    @property
    def isometric(self) -> bool:
        return self.d <= 1.0 + float(section("tolerances")["identity"])


def positioned_by_identity(a: ConvexBody, b: ConvexBody) -> PositionedPair:
    """
    Position (a, b) with the identity map: F′ = c·b with the smallest c such
    that a ⊆ F′, and d = enclosing_factor(a, F′).

    d is then the fixed-position distance of the inputs, which all geodesic
    identities use as their reference value.
    """
    check_same_dimension(a, b)
    c = enclosing_factor(b, a)
    ball_F = scale(b, c)
    d = max(1.0, enclosing_factor(a, ball_F))
    logger.debug("identity positioning: c=%.12g d=%.12g", c, d)
    return PositionedPair(a, ball_F, d)
