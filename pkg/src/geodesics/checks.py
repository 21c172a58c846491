"""
Verification of the geodesic laws.

All distances here are fixed-position distances. Along B_λ / C_λ paths and
their joins they are exact: each factor bounds the true distance from above
and their product is forced down to d by submultiplicativity.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.bodies import ConvexBody, enclosing_factor, inf_convolution, scale
from src.core.errors import InputError, VerificationError
from src.core.guards import check_grid, check_lambda, check_same_dimension, check_vector
from src.core.protocol import ExtremeDistances, InclusionReport, PartitionCheck, SandwichReport
from src.distance import PositionedPair, fixed_position_distance
from src.utils.config import section
from src.utils.logging import get_logger

from .paths import GeodesicPath, b_lambda, c_lambda

logger = get_logger(__name__)


def _tol(name: str) -> float:
    return float(section("tolerances")[name])


def _close(value: float, target: float, rel: float) -> bool:
    return abs(value - target) <= rel * max(1.0, abs(target))


def inclusion_chain_check(pair: PositionedPair, lam: float) -> InclusionReport:
    """B_E ⊆ C_λ ⊆ B_λ ⊆ B_F ⊆ d·B_E, each with slack 1 − enclosing factor."""
    lam = check_lambda(lam)
    ball_B, ball_C = b_lambda(pair, lam), c_lambda(pair, lam)
    slacks = {
        "E_in_C": 1.0 - enclosing_factor(ball_C, pair.ball_E),
        "C_in_B": 1.0 - enclosing_factor(ball_B, ball_C),
        "B_in_F": 1.0 - enclosing_factor(pair.ball_F, ball_B),
        "F_in_dE": 1.0 - enclosing_factor(pair.ball_E, pair.ball_F) / pair.d,
    }
    holds = all(s >= -_tol("inclusion") for s in slacks.values())
    return InclusionReport(lam=lam, holds=holds, slacks=slacks)


def extreme_distance_check(pair: PositionedPair, lam: float, tol: Optional[float] = None) -> ExtremeDistances:
    """
    d(E, B_λ) = d^λ, d(B_λ, F) = d^{1−λ}, d(E, C_λ) = d^λ, d(C_λ, F) = d^{1−λ}.

    Raises VerificationError naming the first identity that fails.
    """
    lam = check_lambda(lam)
    tol = tol if tol is not None else _tol("identity")
    ball_B, ball_C = b_lambda(pair, lam), c_lambda(pair, lam)
    record = ExtremeDistances(
        lam=lam,
        d=pair.d,
        e_to_b=fixed_position_distance(pair.ball_E, ball_B),
        b_to_f=fixed_position_distance(ball_B, pair.ball_F),
        e_to_c=fixed_position_distance(pair.ball_E, ball_C),
        c_to_f=fixed_position_distance(ball_C, pair.ball_F),
    )
    expected = {
        "d(E, E_λ) = d^λ": (record.e_to_b, pair.d ** lam),
        "d(E_λ, F) = d^(1−λ)": (record.b_to_f, pair.d ** (1.0 - lam)),
        "d(E, F_λ) = d^λ": (record.e_to_c, pair.d ** lam),
        "d(F_λ, F) = d^(1−λ)": (record.c_to_f, pair.d ** (1.0 - lam)),
    }
    for identity, (value, target) in expected.items():
        if not _close(value, target, tol):
            raise VerificationError(
                f"extreme-space identity {identity} failed",
                {"lambda": lam, "value": value, "expected": target},
            )
    return record


def geodesic_product_check(path: GeodesicPath, partition: Sequence[float],
                           tol: Optional[float] = None) -> PartitionCheck:
    """
    Consecutive distances along *partition* equal d^{Δλ} and multiply to d.

    The error details name the offending sub-interval.
    """
    partition = check_grid(partition)
    tol = tol if tol is not None else _tol("identity")
    bodies = [path.body_at(lam) for lam in partition]
    pairwise = [fixed_position_distance(a, b) for a, b in zip(bodies, bodies[1:])]
    expected = [path.d ** (t - s) for s, t in zip(partition, partition[1:])]
    for k, (value, target) in enumerate(zip(pairwise, expected)):
        if not _close(value, target, tol):
            raise VerificationError(
                "product law violated on a sub-interval",
                {
                    "interval": [partition[k], partition[k + 1]],
                    "value": value,
                    "expected": target,
                    "partition": partition,
                },
            )
    product = math.prod(pairwise)
    check = PartitionCheck(
        partition=partition, pairwise=pairwise, expected=expected, product=product, target=path.d
    )
    if not _close(product, path.d, tol):
        raise VerificationError(
            "product of pairwise distances differs from d",
            {"product": product, "d": path.d, "partition": partition},
        )
    return check


def dyadic_lengths(path: GeodesicPath, refinement: int) -> List[float]:
    """Σ log d(γ(t_{i−1}), γ(t_i)) over the dyadic partition of each depth 1..refinement."""
    if int(refinement) != refinement or refinement < 1:
        raise InputError(f"refinement must be a positive integer, got {refinement!r}")
    cache: Dict[float, ConvexBody] = {}

    def body(lam: float) -> ConvexBody:
        if lam not in cache:
            cache[lam] = path.body_at(lam)
        return cache[lam]

    lengths: List[float] = []
    for depth in range(1, int(refinement) + 1):
        steps = 2 ** depth
        grid = [k / steps for k in range(steps + 1)]
        total = sum(
            math.log(fixed_position_distance(body(s), body(t))) for s, t in zip(grid, grid[1:])
        )
        lengths.append(total)
        logger.debug("path length at depth %d: %.12g", depth, total)
    return lengths


def path_length(path: GeodesicPath, refinement: int) -> float:
    """Sup of the dyadic lengths of depth 1..refinement."""
    return max(dyadic_lengths(path, refinement))


def sandwich_check(ball_X: ConvexBody, pair: PositionedPair, lam: float,
                   tol: Optional[float] = None) -> SandwichReport:
    """
    Whether C_λ ⊆ B_X ⊆ B_λ; when it holds, d(E, X)·d(X, F) = d is asserted.
    """
    check_same_dimension(ball_X, pair.ball_E)
    lam = check_lambda(lam)
    tol = tol if tol is not None else _tol("identity")
    lower = enclosing_factor(ball_X, c_lambda(pair, lam))
    upper = enclosing_factor(b_lambda(pair, lam), ball_X)
    slack = _tol("inclusion")
    holds = lower <= 1.0 + slack and upper <= 1.0 + slack
    d_ex = d_xf = None
    if holds:
        d_ex = fixed_position_distance(pair.ball_E, ball_X)
        d_xf = fixed_position_distance(ball_X, pair.ball_F)
        if not _close(d_ex * d_xf, pair.d, tol):
            raise VerificationError(
                "sandwiched body is not multiplicative",
                {"lambda": lam, "d_ex": d_ex, "d_xf": d_xf, "d": pair.d},
            )
    return SandwichReport(
        lam=lam, holds=holds, lower_factor=lower, upper_factor=upper,
        d_ex=d_ex, d_xf=d_xf, target=pair.d,
    )


def kj_gauges(pair: PositionedPair, lam: float, x, tol: Optional[float] = None) -> Tuple[float, float]:
    """
    Closed-form gauges of B_λ and C_λ at x:

        max(d^{−λ}·‖x‖_E, ‖x‖_F)   and   inf{ ‖u‖_E + d^{1−λ}·‖x − u‖_F }

    each checked against the constructed body's gauge.
    """
    lam = check_lambda(lam)
    x = check_vector(x, pair.dim)
    tol = tol if tol is not None else _tol("identity")
    d = pair.d
    k_value = max(d ** (-lam) * pair.ball_E.gauge(x), pair.ball_F.gauge(x))
    j_value = inf_convolution(pair.ball_E, scale(pair.ball_F, d ** (lam - 1.0)), x)
    for name, value, body in (
        ("B_λ", k_value, b_lambda(pair, lam)),
        ("C_λ", j_value, c_lambda(pair, lam)),
    ):
        constructed = body.gauge(x)
        if not _close(value, constructed, tol):
            raise VerificationError(
                f"closed-form gauge of {name} disagrees with the constructed body",
                {"lambda": lam, "closed_form": value, "constructed": constructed},
            )
    return k_value, j_value


def random_partition(rng: np.random.Generator, points: int) -> List[float]:
    """Sorted partition of [0, 1] with *points* interior points drawn uniformly."""
    interior = np.sort(rng.uniform(0.0, 1.0, int(points)))
    values = [0.0] + [float(v) for v in interior if 0.0 < v < 1.0] + [1.0]
    return sorted(set(values))
