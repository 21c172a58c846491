"""
Numeric Banach–Mazur distance.

Multi-start Nelder–Mead over the n² entries of a matrix T, normalised to
|det T| = 1, minimising the fixed-position distance between T(a) and b.
Every start owns a seeded generator (seed + k), the reduction keeps the
lowest start index on ties, so reports are reproducible bit for bit.
"""

from __future__ import annotations

import math
from typing import List, Optional

import numpy as np
from scipy.optimize import minimize

from src.bodies import ConvexBody, GaugeBody, LinearImage, enclosing_factor, linear_image, scale
from src.core.errors import InputError
from src.core.guards import DET_GUARD, check_same_dimension
from src.core.protocol import DistanceReport, OptimizerConfig
from src.utils.logging import get_logger

from .fixed import PositionedPair, fixed_position_factors

logger = get_logger(__name__)

SINGULAR_PENALTY = 1e6
# scan resolution inside the optimizer loop; the final report uses the full one
SEARCH_SAMPLES = 512


def _normalised(flat: np.ndarray, n: int) -> Optional[np.ndarray]:
    matrix = flat.reshape(n, n)
    det = np.linalg.det(matrix)
    if not np.isfinite(det) or abs(det) < DET_GUARD:
        return None
    return matrix / abs(det) ** (1.0 / n)


def _start_matrix(k: int, n: int, seed: int) -> np.ndarray:
    """Start 0 is the identity; odd starts random rotations, even starts scaled rotations."""
    if k == 0:
        return np.eye(n)
    rng = np.random.default_rng(seed + k)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if k % 2 == 1:
        return q
    return np.diag(np.exp(rng.normal(0.0, 0.3, n))) @ q


def _image(a: ConvexBody, matrix: np.ndarray) -> ConvexBody:
    return GaugeBody(LinearImage(tuple(map(tuple, matrix.tolist())), a))


def bm_distance(a: ConvexBody, b: ConvexBody, cfg: Optional[OptimizerConfig] = None) -> DistanceReport:
    """
    Upper bound on d(a, b) with its witness map T (applied to a).

    ``factor_in`` is the smallest L with T(a) ⊆ L·b, ``factor_out`` the
    smallest L with b ⊆ L·T(a); their product is the estimate.
    """
    n = check_same_dimension(a, b)
    cfg = cfg or OptimizerConfig.from_config()

    def objective(flat: np.ndarray) -> float:
        matrix = _normalised(flat, n)
        if matrix is None:
            return SINGULAR_PENALTY
        r, s = fixed_position_factors(_image(a, matrix), b, SEARCH_SAMPLES)
        return r * s

    best_value, best_matrix = math.inf, np.eye(n)
    outcomes: List[tuple] = []
    for k in range(cfg.starts):
        x0 = _start_matrix(k, n, cfg.seed).ravel()
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": cfg.max_iters, "xatol": cfg.tol, "fatol": cfg.tol * 1e-2},
        )
        value = float(res.fun)
        outcomes.append((value, bool(res.success)))
        logger.debug("start %d: value=%.10g success=%s iters=%d", k, value, res.success, res.nit)
        if value < best_value:
            matrix = _normalised(res.x, n)
            if matrix is not None:
                best_value, best_matrix = value, matrix

    converged = any(ok and v <= best_value * (1.0 + cfg.tol) for v, ok in outcomes)
    factor_in, factor_out = fixed_position_factors(_image(a, best_matrix), b)
    report = DistanceReport.build(best_matrix, factor_in, factor_out, cfg.starts, converged)
    logger.info(
        "bm_distance: estimate=%.10g starts=%d converged=%s", report.estimate, cfg.starts, converged
    )
    if not converged:
        logger.warning("no optimizer start converged within %d iterations", cfg.max_iters)
    return report


def canonical_position(a: ConvexBody, b: ConvexBody, cfg: Optional[OptimizerConfig] = None) -> PositionedPair:
    """
    Put (a, b) in canonical position B_E ⊆ B_F′ ⊆ d·B_E.

    B_E = a; B_F′ = c·T⁻¹(b) where T is the distance witness and c the
    smallest scalar with a ⊆ c·T⁻¹(b).
    """
    report = bm_distance(a, b, cfg)
    witness = np.asarray(report.witness)
    try:
        pulled = linear_image(b, np.linalg.inv(witness))
    except np.linalg.LinAlgError as exc:
        raise InputError("distance witness is singular") from exc
    c = enclosing_factor(pulled, a)
    ball_F = scale(pulled, c)
    d = max(1.0, enclosing_factor(a, ball_F))
    logger.info("canonical position: d=%.10g (report %.10g)", d, report.estimate)
    return PositionedPair(a, ball_F, d, converged=report.converged)
