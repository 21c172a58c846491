"""
Gauge-oracle bodies.

A ``GaugeBody`` wraps a symbolic descriptor and evaluates its Minkowski
functional directly: ℓ_p norms, linear images, intersections (max of
gauges), convex hulls of unions (inf-convolution of gauges) and scalings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np
from scipy.optimize import linprog, minimize

from src.core.errors import InputError
from src.utils.logging import get_logger

from .base import ConvexBody, maximize_ratio

logger = get_logger(__name__)

P_INF = "inf"


# ── descriptors ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class LpNorm:
    p: Union[float, str]
    dim: int

    def dual_exponent(self) -> float:
        if self.p == P_INF:
            return 1.0
        if self.p == 1:
            return np.inf
        return self.p / (self.p - 1.0)

    def numpy_order(self) -> float:
        return np.inf if self.p == P_INF else float(self.p)


@dataclass(frozen=True)
class LinearImage:
    matrix: Tuple[Tuple[float, ...], ...]
    body: ConvexBody
    inverse: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "inverse", np.linalg.inv(np.asarray(self.matrix, dtype=float)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)


@dataclass(frozen=True)
class IntersectionGauge:
    a: ConvexBody
    b: ConvexBody


@dataclass(frozen=True)
class HullGauge:
    a: ConvexBody
    b: ConvexBody


@dataclass(frozen=True)
class Scaled:
    t: float
    body: ConvexBody


Descriptor = Union[LpNorm, LinearImage, IntersectionGauge, HullGauge, Scaled]


# ── inf-convolution ─────────────────────────────────────────────────────────────

def _inf_convolution_lp(a: ConvexBody, b: ConvexBody, x: np.ndarray) -> float:
    """
    min s + r  s.t.  A_a u ≤ s,  A_b (x − u) ≤ r

    where the rows of A_a / A_b are the facet functionals of the two
    polyhedral bodies, so s = gauge_a(u) and r = gauge_b(x − u) at the optimum.
    """
    fa, fb = a.facet_functionals, b.facet_functionals
    n = x.shape[0]
    cost = np.concatenate([np.zeros(n), [1.0, 1.0]])
    upper_a = np.hstack([fa, -np.ones((len(fa), 1)), np.zeros((len(fa), 1))])
    upper_b = np.hstack([-fb, np.zeros((len(fb), 1)), -np.ones((len(fb), 1))])
    res = linprog(
        cost,
        A_ub=np.vstack([upper_a, upper_b]),
        b_ub=np.concatenate([np.zeros(len(fa)), -(fb @ x)]),
        bounds=[(None, None)] * n + [(0, None), (0, None)],
        method="highs",
    )
    if res.status != 0:
        logger.warning("inf-convolution LP ended with status %s; falling back to simplex search", res.status)
        return _inf_convolution_simplex(a, b, x)
    u = res.x[:n]
    # re-evaluate at the LP split so the value is an attained upper bound
    return float(a.gauge(u) + b.gauge(x - u))


def _inf_convolution_simplex(a: ConvexBody, b: ConvexBody, x: np.ndarray, restarts: int = 3) -> float:
    """Multi-start Nelder–Mead over the split u, seeded at 0, x and x/2."""
    n = x.shape[0]
    size = float(np.linalg.norm(x))

    def objective(u: np.ndarray) -> float:
        return a.gauge(u) + b.gauge(x - u)

    best_u, best_value = None, math.inf
    for seed in (np.zeros(n), x.copy(), 0.5 * x):
        step = 0.25 * size
        u0 = seed
        for _ in range(restarts + 1):
            simplex = np.vstack([u0, u0 + step * np.eye(n)])
            res = minimize(
                objective,
                u0,
                method="Nelder-Mead",
                options={
                    "initial_simplex": simplex,
                    "xatol": 1e-13 * size,
                    "fatol": 1e-14 * size,
                    "maxiter": 2000 * n,
                },
            )
            u0 = res.x
            step *= 0.1
        value = objective(u0)
        if value < best_value:
            best_u, best_value = u0, value
    return float(best_value)


def _inf_convolution_dual(a: ConvexBody, b: ConvexBody, x: np.ndarray) -> float:
    """sup over u of ⟨u, x⟩ / max(h_a(u), h_b(u)) by boundary scan."""
    value, _ = maximize_ratio(
        lambda rows: rows @ x,
        lambda rows: np.maximum(a._support_rows(rows), b._support_rows(rows)),
        x.shape[0],
    )
    return max(float(value), 0.0)


def inf_convolution(a: ConvexBody, b: ConvexBody, x, method: str = "auto") -> float:
    """
    (gauge_a □ gauge_b)(x) = inf{ gauge_a(u) + gauge_b(x − u) }, the gauge of conv(a ∪ b).

    method: "lp" for two polyhedral bodies, "simplex" for the seeded
    Nelder–Mead search, "dual" for the 2D support-function scan, "auto" picks
    the first that applies in that order (simplex when nothing else does).
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    if method == "auto":
        if a.polyhedral and b.polyhedral:
            method = "lp"
        elif x.shape[0] == 2 and a.cheap_support and b.cheap_support:
            method = "dual"
        else:
            method = "simplex"
    if method == "lp":
        if not (a.polyhedral and b.polyhedral):
            raise InputError("the LP inf-convolution needs two polyhedral bodies")
        return _inf_convolution_lp(a, b, x)
    if method == "dual":
        return _inf_convolution_dual(a, b, x)
    if method == "simplex":
        return _inf_convolution_simplex(a, b, x)
    raise InputError(f"unknown inf-convolution method {method!r}")


# ── GaugeBody ───────────────────────────────────────────────────────────────────

class GaugeBody(ConvexBody):
    """Body defined by a descriptor; bodies are immutable and share children freely."""

    def __init__(self, descriptor: Descriptor):
        self.descriptor = descriptor
        self._dim = self._descriptor_dim(descriptor)

    @staticmethod
    def _descriptor_dim(desc: Descriptor) -> int:
        if isinstance(desc, LpNorm):
            return desc.dim
        if isinstance(desc, LinearImage):
            return desc.body.dim
        if isinstance(desc, (IntersectionGauge, HullGauge)):
            if desc.a.dim != desc.b.dim:
                raise InputError(f"dimension mismatch: {desc.a.dim} vs {desc.b.dim}")
            return desc.a.dim
        if isinstance(desc, Scaled):
            return desc.body.dim
        raise InputError(f"unknown gauge descriptor {desc!r}")

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def cheap_gauge(self) -> bool:
        desc = self.descriptor
        if isinstance(desc, LpNorm):
            return True
        if isinstance(desc, (LinearImage, Scaled)):
            return desc.body.cheap_gauge
        if isinstance(desc, IntersectionGauge):
            return desc.a.cheap_gauge and desc.b.cheap_gauge
        return False

    @property
    def cheap_support(self) -> bool:
        desc = self.descriptor
        if isinstance(desc, LpNorm):
            return True
        if isinstance(desc, (LinearImage, Scaled)):
            return desc.body.cheap_support
        if isinstance(desc, HullGauge):
            return desc.a.cheap_support and desc.b.cheap_support
        return False

    def _gauge_rows(self, points: np.ndarray) -> np.ndarray:
        desc = self.descriptor
        if isinstance(desc, LpNorm):
            return np.linalg.norm(points, ord=desc.numpy_order(), axis=1)
        if isinstance(desc, LinearImage):
            return desc.body._gauge_rows(points @ desc.inverse.T)
        if isinstance(desc, IntersectionGauge):
            return np.maximum(desc.a._gauge_rows(points), desc.b._gauge_rows(points))
        if isinstance(desc, Scaled):
            return desc.body._gauge_rows(points) / desc.t
        return np.array([inf_convolution(desc.a, desc.b, row) for row in points])

    def _support_rows(self, directions: np.ndarray) -> np.ndarray:
        desc = self.descriptor
        if isinstance(desc, LpNorm):
            return np.linalg.norm(directions, ord=desc.dual_exponent(), axis=1)
        if isinstance(desc, LinearImage):
            return desc.body._support_rows(directions @ desc.array)
        if isinstance(desc, HullGauge):
            return np.maximum(desc.a._support_rows(directions), desc.b._support_rows(directions))
        if isinstance(desc, Scaled):
            return desc.t * desc.body._support_rows(directions)
        values = []
        for u in directions:
            value, _ = maximize_ratio(lambda rows, u=u: rows @ u, self._gauge_rows, self._dim)
            values.append(value)
        return np.array(values)

    def __repr__(self) -> str:
        return f"GaugeBody({type(self.descriptor).__name__}, dim={self._dim})"
