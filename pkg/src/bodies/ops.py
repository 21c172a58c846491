"""
Public body operations.

Every function validates its inputs through ``src.core.guards`` and then
dispatches on the representation: exact polygons stay exact, polytopes stay
polytopes, anything else becomes a gauge-oracle body.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from src.core.errors import InputError
from src.core.guards import check_matrix, check_same_dimension, check_vector, check_positive
from src.utils.config import section

from .base import ConvexBody, maximize_ratio, sample_directions, circle_directions
from .gauge import (
    P_INF,
    GaugeBody,
    HullGauge,
    IntersectionGauge,
    LinearImage,
    LpNorm,
    Scaled,
)
from .polygon import Polygon2
from .polytope import Polytope3


def gauge(body: ConvexBody, x) -> float:
    """Minkowski functional of *body* at x (vector → float, rows → array)."""
    return body.gauge(check_vector(x, body.dim))


def support(body: ConvexBody, u) -> float:
    """max{⟨u, y⟩ : y ∈ body}; the zero direction is rejected."""
    arr = check_vector(u, body.dim)
    if not np.all(np.any(arr != 0, axis=-1)):
        raise InputError("support function needs a non-zero direction")
    return body.support(arr)


# ── enclosing factor ────────────────────────────────────────────────────────────

def _boundary_ratio(inner: ConvexBody, outer: ConvexBody, samples: Optional[int]) -> float:
    if inner.cheap_gauge and outer.cheap_gauge:
        value, _ = maximize_ratio(inner._gauge_rows, outer._gauge_rows, inner.dim, samples)
    elif inner.cheap_support and outer.cheap_support:
        value, _ = maximize_ratio(outer._support_rows, inner._support_rows, inner.dim, samples)
    else:
        value, _ = maximize_ratio(inner._gauge_rows, outer._gauge_rows, inner.dim, samples)
    return float(value)


def _enclosing(inner: ConvexBody, outer: ConvexBody, samples: Optional[int] = None) -> float:
    if outer.polyhedral:
        return float(np.max(inner._gauge_rows(outer.vertices_float)))
    if isinstance(outer, GaugeBody):
        desc = outer.descriptor
        if isinstance(desc, HullGauge):
            return max(_enclosing(inner, desc.a, samples), _enclosing(inner, desc.b, samples))
        if isinstance(desc, Scaled):
            return desc.t * _enclosing(inner, desc.body, samples)
    if isinstance(inner, GaugeBody):
        desc = inner.descriptor
        if isinstance(desc, IntersectionGauge):
            return max(_enclosing(desc.a, outer, samples), _enclosing(desc.b, outer, samples))
        if isinstance(desc, Scaled):
            return _enclosing(desc.body, outer, samples) / desc.t
    if inner.polyhedral and outer.cheap_support:
        return float(np.max(outer._support_rows(inner.facet_functionals)))
    return _boundary_ratio(inner, outer, samples)


def enclosing_factor(inner: ConvexBody, outer: ConvexBody, samples: Optional[int] = None) -> float:
    """
    Smallest L with outer ⊆ L·inner, i.e. sup over outer of gauge_inner.

    Structural cases (polytope vertices, hull/scaled outer, intersection/scaled
    inner, polytope facets against a closed-form support) are exact; the rest
    fall back to a boundary search with *samples* scan directions.
    """
    check_same_dimension(inner, outer)
    return _enclosing(inner, outer, samples)


def contains(big: ConvexBody, small: ConvexBody, slack: float = None) -> bool:
    """small ⊆ big within the inclusion tolerance."""
    if slack is None:
        slack = float(section("tolerances")["inclusion"])
    return enclosing_factor(big, small) <= 1.0 + slack


# ── constructions ───────────────────────────────────────────────────────────────

def intersect(a: ConvexBody, b: ConvexBody) -> ConvexBody:
    check_same_dimension(a, b)
    if isinstance(a, Polygon2) and isinstance(b, Polygon2):
        return a.intersection(b)
    if isinstance(a, Polytope3) and isinstance(b, Polytope3):
        return a.intersection(b)
    return GaugeBody(IntersectionGauge(a, b))


def hull_union(a: ConvexBody, b: ConvexBody) -> ConvexBody:
    check_same_dimension(a, b)
    if isinstance(a, Polygon2) and isinstance(b, Polygon2):
        return a.hull_with(b)
    if isinstance(a, Polytope3) and isinstance(b, Polytope3):
        return a.hull_with(b)
    return GaugeBody(HullGauge(a, b))


def scale(body: ConvexBody, t) -> ConvexBody:
    """t·body; gauge(scale(K, t), x) = gauge(K, x) / t."""
    if isinstance(t, Fraction):
        if t <= 0:
            raise InputError(f"scale factor must be a positive real, got {t}")
    else:
        t = check_positive(t, "scale factor")
    if t == 1:
        return body
    if isinstance(body, (Polygon2, Polytope3)):
        return body.scaled(t)
    if isinstance(body.descriptor, Scaled):
        return scale(body.descriptor.body, float(t) * body.descriptor.t)
    return GaugeBody(Scaled(float(t), body))


def linear_image(body: ConvexBody, matrix) -> ConvexBody:
    """T(body); gauge(T(K), x) = gauge(K, T⁻¹x)."""
    arr = check_matrix(matrix, body.dim)
    if isinstance(body, Polygon2):
        return body.mapped(matrix if _is_exact_matrix(matrix) else arr)
    if isinstance(body, Polytope3):
        return body.mapped(arr)
    return GaugeBody(LinearImage(tuple(tuple(float(v) for v in row) for row in arr), body))


def _is_exact_matrix(matrix) -> bool:
    try:
        return all(
            isinstance(e, (int, Fraction, np.integer)) and not isinstance(e, bool)
            for row in matrix
            for e in row
        )
    except TypeError:
        return False


def normalize_exponent(p) -> Union[float, str]:
    if isinstance(p, str):
        if p.strip().lower() in {"inf", "infinity", "∞"}:
            return P_INF
        try:
            p = float(p)
        except ValueError as exc:
            raise InputError(f"p must be a number or 'inf', got {p!r}") from exc
    p = float(p)
    if math.isinf(p) and p > 0:
        return P_INF
    if not math.isfinite(p) or p < 1:
        raise InputError(f"p must lie in [1, ∞], got {p}")
    return p


def lp_ball(p, dim: int) -> ConvexBody:
    """Unit ball of ℓ_p^dim; exact polytope for p ∈ {1, ∞} and dim ≤ 3."""
    p = normalize_exponent(p)
    if int(dim) != dim or dim < 2:
        raise InputError(f"dimension must be an integer ≥ 2, got {dim!r}")
    dim = int(dim)
    if dim <= 3 and (p == 1 or p == P_INF):
        if p == 1:
            points = np.eye(dim, dtype=int)
        else:
            points = np.array(
                [[1 if (k >> j) & 1 else -1 for j in range(dim)] for k in range(2 ** dim)]
            )
        if dim == 2:
            return Polygon2.from_points([(int(x), int(y)) for x, y in points])
        return Polytope3.from_points(points)
    return GaugeBody(LpNorm(p, dim))


def polygonize(body: ConvexBody, sides: int = None) -> Polygon2:
    """Inscribed polygon through the boundary points in *sides* uniform directions."""
    if body.dim != 2:
        raise InputError("only 2D bodies can be polygonized")
    if isinstance(body, Polygon2):
        return body
    sides = sides or int(section("family")["polygon_sides"])
    if sides < 4 or sides % 2:
        raise InputError(f"polygonization needs an even number of sides ≥ 4, got {sides}")
    return Polygon2.from_points(body.boundary_points(circle_directions(sides)))


def gauge_equal(a: ConvexBody, b: ConvexBody, tol: float = 1e-9, samples: int = None) -> bool:
    """Exact vertex comparison for polygons, sampled gauge comparison otherwise."""
    check_same_dimension(a, b)
    if isinstance(a, Polygon2) and isinstance(b, Polygon2) and a.vertex_set() == b.vertex_set():
        return True
    samples = samples or int(section("search")["angular_samples"])
    dirs = sample_directions(a.dim, samples, seed=0)
    ga, gb = a._gauge_rows(dirs), b._gauge_rows(dirs)
    return bool(np.max(np.abs(ga - gb) / np.maximum(1.0, ga)) <= tol)


def supporting_functional(body: ConvexBody, x) -> Tuple[float, np.ndarray]:
    """
    A functional f with support(body, f) ≤ 1 attaining f(x) = gauge(body, x).

    Returns (gauge value, f).
    """
    return _supporting(body, check_vector(x, body.dim))


def _supporting(body: ConvexBody, x: np.ndarray) -> Tuple[float, np.ndarray]:
    if body.polyhedral:
        values = body.facet_functionals @ x
        k = int(np.argmax(values))
        return float(values[k]), body.facet_functionals[k].copy()
    if isinstance(body, GaugeBody):
        desc = body.descriptor
        if isinstance(desc, IntersectionGauge):
            child = desc.a if desc.a.gauge(x) >= desc.b.gauge(x) else desc.b
            return _supporting(child, x)
        if isinstance(desc, Scaled):
            value, f = _supporting(desc.body, x)
            return value / desc.t, f / desc.t
        if isinstance(desc, LinearImage):
            value, f = _supporting(desc.body, desc.inverse @ x)
            return value, desc.inverse.T @ f
    value, u = maximize_ratio(lambda rows: rows @ x, body._support_rows, body.dim)
    return float(value), u / body.support(u)
