"""
Floating-point symmetric polytopes in R^3.

Built on qhull through ``scipy.spatial``: hulls come from ``ConvexHull``,
intersections from ``HalfspaceIntersection``. Qhull triangulates facets, so
coplanar triangles are merged back into polygonal facets by comparing their
plane equations at the collinear tolerance. Every constructed polytope is
re-checked for symmetry, planarity and an interior origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from src.core.errors import InputError
from src.utils.config import section

from .base import ConvexBody


@dataclass(frozen=True)
class Facet:
    """Vertex-index cycle (counterclockwise seen from outside) with its plane n·x = offset."""
    indices: Tuple[int, ...]
    normal: Tuple[float, float, float]
    offset: float

    @property
    def size(self) -> int:
        return len(self.indices)


def _dedupe(points: np.ndarray, radius: float) -> np.ndarray:
    """Keep the first of every cluster of points closer than *radius* (qhull repeats degenerate vertices)."""
    kept: List[np.ndarray] = []
    for p in points:
        if not kept or np.min(np.linalg.norm(np.asarray(kept) - p, axis=1)) > radius:
            kept.append(p)
    return np.asarray(kept)


def _ordered_cycle(vertices: np.ndarray, indices: Sequence[int], normal: np.ndarray) -> Tuple[int, ...]:
    pts = vertices[list(indices)]
    centre = pts.mean(axis=0)
    e1 = pts[0] - centre
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    rel = pts - centre
    angles = np.arctan2(rel @ e2, rel @ e1)
    return tuple(int(indices[k]) for k in np.argsort(angles))


class Polytope3(ConvexBody):
    """Origin-symmetric convex polytope in R^3; build through ``Polytope3.from_points``."""

    def __init__(self, vertices: np.ndarray, facets: List[Facet], tol: float):
        self._verts = np.asarray(vertices, dtype=float)
        self._verts.setflags(write=False)
        self._facets = tuple(facets)
        normals = np.array([f.normal for f in facets])
        offsets = np.array([f.offset for f in facets])
        self._functionals = normals / offsets[:, None]
        self._tol = tol
        self._validate()

    @classmethod
    def from_points(cls, points, tol: float = None) -> "Polytope3":
        """Symmetric closure and hull of arbitrary 3D points."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) == 0:
            raise InputError(f"polytope points must be an (m, 3) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InputError("polytope coordinates must be finite")
        if tol is None:
            tol = float(section("tolerances")["collinear"])
        pts = np.vstack([pts, -pts])
        pts = _dedupe(pts, tol * float(np.max(np.linalg.norm(pts, axis=1))))
        try:
            hull = ConvexHull(pts)
        except QhullError as exc:
            raise InputError("points do not span a 3D body around the origin") from exc

        scale = float(np.max(np.linalg.norm(pts, axis=1)))
        position = {int(k): i for i, k in enumerate(hull.vertices)}
        vertices = pts[hull.vertices]

        groups: List[dict] = []
        for simplex, equation in zip(hull.simplices, hull.equations):
            normal, offset = equation[:3], -float(equation[3])
            for group in groups:
                if (
                    np.linalg.norm(group["normal"] - normal) <= tol
                    and abs(group["offset"] - offset) <= tol * scale
                ):
                    group["members"].update(position[int(k)] for k in simplex)
                    break
            else:
                groups.append(
                    {"normal": normal, "offset": offset,
                     "members": {position[int(k)] for k in simplex}}
                )

        facets = [
            Facet(
                indices=_ordered_cycle(vertices, sorted(g["members"]), g["normal"]),
                normal=tuple(float(v) for v in g["normal"]),
                offset=g["offset"],
            )
            for g in groups
        ]
        return cls(vertices, facets, tol)

    def _validate(self) -> None:
        scale = float(np.max(np.linalg.norm(self._verts, axis=1)))
        slack = self._tol * scale
        if any(f.offset <= slack for f in self._facets):
            raise InputError("origin is not strictly inside the polytope")
        for v in self._verts:
            if np.min(np.linalg.norm(self._verts + v, axis=1)) > slack:
                raise InputError("polytope is not origin-symmetric")
        for f in self._facets:
            heights = self._verts[list(f.indices)] @ np.asarray(f.normal) - f.offset
            if np.max(np.abs(heights)) > slack:
                raise InputError("polytope facet is not planar")

    # ── ConvexBody contract ─────────────────────────────────────────────────────

    @property
    def dim(self) -> int:
        return 3

    @property
    def polyhedral(self) -> bool:
        return True

    def _gauge_rows(self, points: np.ndarray) -> np.ndarray:
        return np.maximum(np.max(points @ self._functionals.T, axis=1), 0.0)

    def _support_rows(self, directions: np.ndarray) -> np.ndarray:
        return np.max(directions @ self._verts.T, axis=1)

    # ── data ────────────────────────────────────────────────────────────────────

    @property
    def vertices_float(self) -> np.ndarray:
        return self._verts

    @property
    def facets(self) -> Tuple[Facet, ...]:
        return self._facets

    @property
    def facet_functionals(self) -> np.ndarray:
        return self._functionals

    def facet_census(self) -> List[int]:
        """Sorted facet vertex counts."""
        return sorted(f.size for f in self._facets)

    def facet_points(self, facet: Facet) -> np.ndarray:
        return self._verts[list(facet.indices)]

    # ── constructions ───────────────────────────────────────────────────────────

    def halfspaces(self) -> np.ndarray:
        """Rows [n, -offset] with n·x - offset ≤ 0 inside (qhull convention)."""
        return np.array([[*f.normal, -f.offset] for f in self._facets])

    def intersection(self, other: "Polytope3") -> "Polytope3":
        stacked = np.vstack([self.halfspaces(), other.halfspaces()])
        cut = HalfspaceIntersection(stacked, np.zeros(3))
        return Polytope3.from_points(cut.intersections, self._tol)

    def hull_with(self, other: "Polytope3") -> "Polytope3":
        return Polytope3.from_points(np.vstack([self._verts, other.vertices_float]), self._tol)

    def scaled(self, t) -> "Polytope3":
        return Polytope3.from_points(self._verts * float(t), self._tol)

    def mapped(self, matrix) -> "Polytope3":
        return Polytope3.from_points(self._verts @ np.asarray(matrix, dtype=float).T, self._tol)

    def __repr__(self) -> str:
        return f"Polytope3({len(self._verts)} vertices, {len(self._facets)} facets)"


def facet_matches(poly: Polytope3, points: np.ndarray, tol: float = 1e-7) -> bool:
    """True when some facet's vertex set equals *points* (order free, within tol)."""
    points = np.asarray(points, dtype=float)
    scale = max(1.0, float(np.max(np.linalg.norm(poly.vertices_float, axis=1))))
    for facet in poly.facets:
        if facet.size != len(points):
            continue
        verts = poly.facet_points(facet)
        dists = np.linalg.norm(verts[:, None, :] - points[None, :, :], axis=2)
        if np.all(dists.min(axis=1) <= tol * scale) and np.all(dists.min(axis=0) <= tol * scale):
            return True
    return False


def embed_polygon_3d(centre, normal, shape) -> np.ndarray:
    """Planar (m, 2) *shape* mapped into the plane through *centre* orthogonal to *normal*."""
    normal = np.asarray(normal, dtype=float)
    normal = normal / np.linalg.norm(normal)
    helper = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(normal, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    shape = np.asarray(shape, dtype=float)
    return np.asarray(centre, dtype=float) + np.outer(shape[:, 0], e1) + np.outer(shape[:, 1], e2)
