"""
ConvexBody Abstract Class

Foundation for every representation of an origin-symmetric convex body:
exact polygons, floating polytopes and gauge-oracle bodies. Each subclass
implements row-wise gauge and support evaluation; the base class handles
shape normalisation and the boundary searches shared by all of them.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from src.utils.config import section

RowFn = Callable[[np.ndarray], np.ndarray]


class ConvexBody(ABC):
    """
    Abstract base class for unit balls of norms on R^n.

    Subclasses must implement:
    - dim
    - _gauge_rows(): Minkowski functional on an (m, n) array
    - _support_rows(): support function on an (m, n) array

    Subclasses advertise whether those evaluations are closed-form
    (``cheap_gauge`` / ``cheap_support``); the enclosing-factor dispatcher
    uses this to pick the formulation that avoids nested numeric searches.
    """

    @property
    @abstractmethod
    def dim(self) -> int:
        """Ambient dimension n."""

    @abstractmethod
    def _gauge_rows(self, points: np.ndarray) -> np.ndarray:
        """Gauge of each row of an (m, n) array."""

    @abstractmethod
    def _support_rows(self, directions: np.ndarray) -> np.ndarray:
        """Support function of each row of an (m, n) array."""

    @property
    def cheap_gauge(self) -> bool:
        return True

    @property
    def cheap_support(self) -> bool:
        return True

    @property
    def polyhedral(self) -> bool:
        return False

    # ── evaluation with shape handling ─────────────────────────────────────────

    def gauge(self, x) -> np.ndarray:
        """Gauge at a vector (returns float) or at the rows of an array."""
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 1:
            return float(self._gauge_rows(arr[None, :])[0])
        return self._gauge_rows(arr.reshape(-1, self.dim)).reshape(arr.shape[:-1])

    def support(self, u) -> np.ndarray:
        """Support function at a vector (returns float) or at the rows of an array."""
        arr = np.asarray(u, dtype=float)
        if arr.ndim == 1:
            return float(self._support_rows(arr[None, :])[0])
        return self._support_rows(arr.reshape(-1, self.dim)).reshape(arr.shape[:-1])

    def boundary_points(self, directions: np.ndarray) -> np.ndarray:
        """Radial projection of non-zero *directions* onto the boundary."""
        directions = np.asarray(directions, dtype=float)
        return directions / self._gauge_rows(directions)[:, None]

    def sample_directions(self, count: Optional[int] = None, seed: int = 0) -> np.ndarray:
        """Uniform angles in 2D, seeded Gaussian directions otherwise."""
        count = count or int(section("search")["angular_samples"])
        return sample_directions(self.dim, count, seed)


# ── direction sampling ──────────────────────────────────────────────────────────

def circle_directions(count: int, offset: float = 0.0) -> np.ndarray:
    angles = offset + 2.0 * math.pi * np.arange(count) / count
    return np.column_stack([np.cos(angles), np.sin(angles)])


def sample_directions(dim: int, count: int, seed: int = 0) -> np.ndarray:
    if dim == 2:
        return circle_directions(count)
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, dim))
    return raw / np.linalg.norm(raw, axis=1)[:, None]


# ── boundary maximisation ───────────────────────────────────────────────────────

def _ratio(num: RowFn, den: RowFn, rows: np.ndarray) -> np.ndarray:
    den_values = den(rows)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = num(rows) / den_values
    return np.where(den_values > 0, values, -np.inf)


def maximize_ratio(
    num: RowFn,
    den: RowFn,
    dim: int,
    samples: Optional[int] = None,
    starts: Optional[int] = None,
    seed: int = 0,
) -> Tuple[float, np.ndarray]:
    """
    Maximise num(u) / den(u) over unit directions u.

    Both functions must be positively homogeneous of the same degree, so the
    ratio only depends on the direction. 2D: angular scan followed by a
    bounded scalar refinement in the bracketing cell. dim ≥ 3: seeded random
    directions, the best ``starts`` of them refined by Nelder–Mead.

    Returns (value, maximising unit direction).
    """
    search = section("search")
    samples = samples or int(search["angular_samples"])
    if dim == 2:
        dirs = circle_directions(samples)
        values = _ratio(num, den, dirs)
        k = int(np.argmax(values))
        best_value, best_dir = float(values[k]), dirs[k]
        step = 2.0 * math.pi / samples
        centre = 2.0 * math.pi * k / samples

        def objective(theta: float) -> float:
            u = np.array([[math.cos(theta), math.sin(theta)]])
            return -float(_ratio(num, den, u)[0])

        res = minimize_scalar(
            objective,
            bounds=(centre - step, centre + step),
            method="bounded",
            options={"xatol": 1e-13},
        )
        if -res.fun > best_value:
            best_value = -float(res.fun)
            best_dir = np.array([math.cos(res.x), math.sin(res.x)])
        return best_value, best_dir

    starts = starts or int(search["sphere_starts"])
    dirs = sample_directions(dim, samples, seed)
    values = _ratio(num, den, dirs)
    order = np.argsort(-values)[:starts]
    best_value, best_dir = float(values[order[0]]), dirs[order[0]]

    def objective(v: np.ndarray) -> float:
        norm = np.linalg.norm(v)
        if norm == 0:
            return math.inf
        return -float(_ratio(num, den, (v / norm)[None, :])[0])

    for idx in order:
        res = minimize(
            objective,
            dirs[idx],
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-13, "maxiter": 400 * dim},
        )
        if np.isfinite(res.fun) and -res.fun > best_value:
            best_value = -float(res.fun)
            best_dir = res.x / np.linalg.norm(res.x)
    return best_value, best_dir
