"""
Exact symmetric polygons.

Vertices are stored as pairs of ``fractions.Fraction``. Float input is
snapped to the dyadic grid 2^-40 on ingestion, after which orientation
tests, halfplane clipping and hulls are exact. Float copies of the vertex
and facet data are cached for the vectorised gauge/support evaluation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.core.errors import InputError
from src.utils.config import section

from .base import ConvexBody

Point = Tuple[Fraction, Fraction]

GRID_BITS = 40
_GRID = 2 ** GRID_BITS


def snap(value) -> Fraction:
    """Exact rational for ints/Fractions, nearest 2^-40 multiple for floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"polygon coordinates must be finite, got {value}")
    return Fraction(round(value * _GRID), _GRID)


def det(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def orient(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of (o, a, b); > 0 for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _neg(p: Point) -> Point:
    return (-p[0], -p[1])


def _monotone_chain(points: Iterable[Point]) -> List[Point]:
    """Exact counterclockwise hull without collinear vertices."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        chain: List[Point] = []
        for p in seq:
            while len(chain) >= 2 and orient(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _merge_near_collinear(vertices: List[Point], rel_tol: float) -> List[Point]:
    """Drop vertices within rel_tol·diameter of the line through their neighbours, in antipodal pairs."""
    floats = [(float(x), float(y)) for x, y in vertices]
    diameter = 2.0 * max(math.hypot(x, y) for x, y in floats)
    while len(vertices) > 4:
        m = len(vertices)
        half = m // 2
        floats = [(float(x), float(y)) for x, y in vertices]
        drop = set()
        for i in range(half):
            if (i - 1) % m in drop or (i + 1) % m in drop:
                continue
            (ax, ay), (bx, by), (cx, cy) = floats[i - 1], floats[i], floats[(i + 1) % m]
            base = math.hypot(cx - ax, cy - ay)
            height = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) / base
            if height <= rel_tol * diameter:
                drop.update((i, i + half))
        if not drop:
            break
        vertices = [v for k, v in enumerate(vertices) if k not in drop]
    return vertices


def _canonical_start(vertices: List[Point]) -> List[Point]:
    angles = [math.atan2(float(y), float(x)) % (2.0 * math.pi) for x, y in vertices]
    k = int(np.argmin(angles))
    return vertices[k:] + vertices[:k]


class Polygon2(ConvexBody):
    """
    Origin-symmetric convex polygon with exact rational vertices.

    Vertices are counterclockwise, free of collinear splits, and start at the
    vertex of smallest polar angle in [0, 2π). Build through
    ``Polygon2.from_points``, which applies the symmetric closure.
    """

    def __init__(self, vertices: Sequence[Point]):
        self._vertices: Tuple[Point, ...] = tuple(vertices)
        self._validate()
        m = len(self._vertices)
        self._verts_f = np.array([[float(x), float(y)] for x, y in self._vertices])
        functionals = []
        for i in range(m):
            a, b = self._vertices[i], self._vertices[(i + 1) % m]
            offset = det(a, b)
            functionals.append(((b[1] - a[1]) / offset, (a[0] - b[0]) / offset))
        self._functionals: Tuple[Point, ...] = tuple(functionals)
        self._functionals_f = np.array([[float(x), float(y)] for x, y in functionals])

    @classmethod
    def from_points(cls, points: Iterable[Sequence], merge_tol: float = None) -> "Polygon2":
        """Symmetric closure, exact hull and collinear merge of arbitrary 2D points."""
        snapped: List[Point] = []
        for p in points:
            if len(p) != 2:
                raise InputError(f"polygon points must be 2D, got {p!r}")
            q = (snap(p[0]), snap(p[1]))
            snapped.extend((q, _neg(q)))
        hull = _monotone_chain(snapped)
        if len(hull) < 4:
            raise InputError("points do not span a 2D body around the origin")
        if merge_tol is None:
            merge_tol = float(section("tolerances")["collinear"])
        hull = _merge_near_collinear(_canonical_start(hull), merge_tol)
        return cls(_canonical_start(hull))

    def _validate(self) -> None:
        verts = self._vertices
        m = len(verts)
        if m < 4 or m % 2:
            raise InputError(f"a symmetric polygon needs an even vertex count ≥ 4, got {m}")
        if set(verts) != {_neg(v) for v in verts}:
            raise InputError("polygon is not origin-symmetric")
        for i in range(m):
            if det(verts[i], verts[(i + 1) % m]) <= 0:
                raise InputError("origin is not strictly inside the polygon")
            if orient(verts[i - 1], verts[i], verts[(i + 1) % m]) <= 0:
                raise InputError("polygon vertices are not strictly convex")

    # ── ConvexBody contract ─────────────────────────────────────────────────────

    @property
    def dim(self) -> int:
        return 2

    @property
    def polyhedral(self) -> bool:
        return True

    def _gauge_rows(self, points: np.ndarray) -> np.ndarray:
        return np.maximum(np.max(points @ self._functionals_f.T, axis=1), 0.0)

    def _support_rows(self, directions: np.ndarray) -> np.ndarray:
        return np.max(directions @ self._verts_f.T, axis=1)

    # ── exact data ──────────────────────────────────────────────────────────────

    @property
    def vertices(self) -> Tuple[Point, ...]:
        return self._vertices

    @property
    def vertices_float(self) -> np.ndarray:
        return self._verts_f

    @property
    def facet_functionals(self) -> np.ndarray:
        """Row i is the functional equal to 1 on edge i."""
        return self._functionals_f

    def vertex_set(self) -> frozenset:
        return frozenset(self._vertices)

    def edges(self) -> List[Tuple[Point, Point]]:
        m = len(self._vertices)
        return [(self._vertices[i], self._vertices[(i + 1) % m]) for i in range(m)]

    def gauge_exact(self, point: Point) -> Fraction:
        p = (snap(point[0]), snap(point[1]))
        return max(f[0] * p[0] + f[1] * p[1] for f in self._functionals)

    def contains_exact(self, point: Point) -> bool:
        return self.gauge_exact(point) <= 1

    def area(self) -> Fraction:
        return sum((det(a, b) for a, b in self.edges()), Fraction(0)) / 2

    # ── constructions ───────────────────────────────────────────────────────────

    def intersection(self, other: "Polygon2") -> "Polygon2":
        """Exact Sutherland–Hodgman clipping of self by every edge of *other*."""
        output: List[Point] = list(self._vertices)
        for a, b in other.edges():
            source, output = output, []
            for i, p in enumerate(source):
                q = source[(i + 1) % len(source)]
                side_p, side_q = orient(a, b, p), orient(a, b, q)
                if side_p >= 0:
                    output.append(p)
                if (side_p > 0 > side_q) or (side_p < 0 < side_q):
                    t = side_p / (side_p - side_q)
                    output.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        return Polygon2.from_points(output)

    def hull_with(self, other: "Polygon2") -> "Polygon2":
        return Polygon2.from_points(self._vertices + other.vertices)

    def scaled(self, t) -> "Polygon2":
        if isinstance(t, (int, Fraction)):
            factor = Fraction(t)
            return Polygon2.from_points((x * factor, y * factor) for x, y in self._vertices)
        t = float(t)
        return Polygon2.from_points((float(x) * t, float(y) * t) for x, y in self._vertices)

    def mapped(self, matrix) -> "Polygon2":
        """Image under a 2x2 matrix; integral or Fraction entries stay exact."""
        rows = [[entry for entry in row] for row in matrix]
        exact = all(
            isinstance(e, (int, Fraction, np.integer))
            or (isinstance(e, float) and e.is_integer())
            for row in rows
            for e in row
        )
        if exact:
            m = [[e if isinstance(e, Fraction) else Fraction(int(e)) for e in row] for row in rows]
            images = (
                (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y) for x, y in self._vertices
            )
            return Polygon2.from_points(images)
        arr = np.asarray(rows, dtype=float)
        return Polygon2.from_points(self._verts_f @ arr.T)

    def __repr__(self) -> str:
        return f"Polygon2({len(self._vertices)} vertices)"
