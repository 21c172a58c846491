"""
Edges of symmetric polygons and the triangle-area-ratio invariant.

For a polygon K with edges [v_i, v_{i+1}], the origin-anchored triangles
(0, v_i, v_{i+1}) form S_K and the set of all ratios of their areas is A_K.
A linear map multiplies every area by |det T|, so A_K is preserved: two
polygons with different A_K are not linearly isometric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from src.bodies import ConvexBody, Polygon2
from src.bodies.polygon import Point, det
from src.core.errors import InputError
from src.core.protocol import AreaRatioInvariant
from src.utils.config import section


@dataclass(frozen=True)
class EdgeFace:
    """Edge ``index`` of the counterclockwise cycle, from endpoints[0] to endpoints[1]."""
    endpoints: Tuple[Point, Point]
    index: int

    def as_floats(self) -> List[List[float]]:
        return [[float(c) for c in p] for p in self.endpoints]

    def matches(self, a: Point, b: Point) -> bool:
        return self.endpoints == (a, b)


def _polygon(body: ConvexBody) -> Polygon2:
    if not isinstance(body, Polygon2):
        raise InputError(f"expected an exact 2D polygon, got {type(body).__name__}")
    return body


def faces_1d(poly: Polygon2) -> List[EdgeFace]:
    """All edges of the (collinear-merged) polygon."""
    return [EdgeFace(endpoints=edge, index=i) for i, edge in enumerate(_polygon(poly).edges())]


def triangle_areas(poly: Polygon2) -> List[Fraction]:
    """Exact areas of the triangles (0, v_i, v_{i+1})."""
    return [det(a, b) / 2 for a, b in _polygon(poly).edges()]


def _collapse(values: np.ndarray, rel_tol: float) -> List[float]:
    kept: List[float] = []
    for v in np.sort(values):
        if not kept or not math.isclose(v, kept[-1], rel_tol=rel_tol, abs_tol=0.0):
            kept.append(float(v))
    return kept


def area_ratios(poly: Polygon2, rel_tol: Optional[float] = None) -> AreaRatioInvariant:
    """
    Every ratio μ(T_i)/μ(T_j) over pairs of edge triangles (i = j included),
    sorted, with values within *rel_tol* of each other collapsed.
    """
    rel_tol = rel_tol if rel_tol is not None else float(section("tolerances")["ratio"])
    # distinct exact areas first: the ratio grid is quadratic in their number
    areas = np.array([float(a) for a in sorted(set(triangle_areas(poly)))])
    ratios = (areas[:, None] / areas[None, :]).ravel()
    return AreaRatioInvariant(ratios=_collapse(ratios, rel_tol))


def _contained(values: np.ndarray, reference: np.ndarray, rel_tol: float) -> bool:
    """Each value has a relative-tolerance match in the sorted *reference*."""
    idx = np.searchsorted(reference, values)
    lower = reference[np.clip(idx - 1, 0, len(reference) - 1)]
    upper = reference[np.clip(idx, 0, len(reference) - 1)]
    gap = np.minimum(np.abs(values - lower), np.abs(values - upper))
    return bool(np.all(gap <= rel_tol * np.abs(values)))


def invariant_distinct(a: AreaRatioInvariant, b: AreaRatioInvariant,
                       rel_tol: Optional[float] = None) -> bool:
    """
    True iff some ratio of one set has no match in the other.

    A True verdict certifies non-isometry; False is inconclusive.
    """
    rel_tol = rel_tol if rel_tol is not None else float(section("tolerances")["distinct"])
    ra, rb = np.asarray(a.ratios), np.asarray(b.ratios)
    return not (_contained(ra, rb, rel_tol) and _contained(rb, ra, rel_tol))


def edge_census(poly: Polygon2) -> dict:
    """Counts reported next to the invariant."""
    areas = triangle_areas(poly)
    return {"edges": len(areas), "distinct_triangle_areas": len(set(areas))}
