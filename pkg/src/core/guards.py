"""
Input guards for the geometry pipeline.

Validators that run *before* any computation to reject malformed inputs that
would otherwise surface as obscure numerical failures downstream. Every
helper raises ``InputError`` (exit code 2) and returns the normalised value.

Public helpers
--------------
- ``check_lambda(lam, open_interval=False)``   → float
- ``check_grid(grid)``                         → list[float]
- ``parse_grid_spec(spec)``                    → list[float]
- ``check_same_dimension(a, b)``               → int
- ``check_matrix(matrix, dim)``                → numpy.ndarray
- ``check_count(count)``                       → int
"""

from __future__ import annotations

import math
from typing import Iterable, List, Sequence

import numpy as np

from .errors import InputError

# ── Constants ──────────────────────────────────────────────────────────────────

DET_GUARD = 1e-12
GRID_ENDPOINT_TOL = 1e-12


def check_lambda(lam: float, open_interval: bool = False) -> float:
    """λ must be finite and lie in [0, 1] (or (0, 1) when *open_interval*)."""
    try:
        value = float(lam)
    except (TypeError, ValueError) as exc:
        raise InputError(f"λ must be a real number, got {lam!r}") from exc
    if not math.isfinite(value):
        raise InputError(f"λ must be finite, got {value}")
    if open_interval and not 0.0 < value < 1.0:
        raise InputError(f"λ must lie in (0, 1), got {value}", {"lambda": value})
    if not 0.0 <= value <= 1.0:
        raise InputError(f"λ must lie in [0, 1], got {value}", {"lambda": value})
    return value


def check_grid(grid: Iterable[float]) -> List[float]:
    """A λ grid is strictly increasing, starts at 0 and ends at 1."""
    values = [check_lambda(v) for v in grid]
    if len(values) < 2:
        raise InputError("a λ grid needs at least the two endpoints 0 and 1")
    if abs(values[0]) > GRID_ENDPOINT_TOL or abs(values[-1] - 1.0) > GRID_ENDPOINT_TOL:
        raise InputError("a λ grid must start at 0 and end at 1", {"grid": values})
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InputError("λ grid values must be strictly increasing", {"grid": values})
    values[0], values[-1] = 0.0, 1.0
    return values


def uniform_grid(points: int) -> List[float]:
    if points < 2:
        raise InputError(f"a uniform grid needs at least 2 points, got {points}")
    return [k / (points - 1) for k in range(points)]


def parse_grid_spec(spec: str) -> List[float]:
    """
    Parse ``a:b:step`` (inclusive of b up to rounding) into a grid.

    ``0:1:0.1`` gives the 11-point uniform grid.
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError(f"grid spec must look like a:b:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"grid spec must be numeric, got {spec!r}") from exc
    if step <= 0:
        raise InputError(f"grid step must be positive, got {step}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + k * step for k in range(count)]
    if abs(values[-1] - stop) > 1e-9:
        values.append(stop)
    values[-1] = stop
    return check_grid(values)


def parse_grid_list(spec: str) -> List[float]:
    try:
        return check_grid(float(v) for v in spec.split(",") if v.strip())
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"grid list must be comma-separated numbers, got {spec!r}") from exc


def check_same_dimension(a, b) -> int:
    """Both bodies (anything with ``.dim``) must share one dimension."""
    if a.dim != b.dim:
        raise InputError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return a.dim


def check_vector(x: Sequence[float], dim: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (dim,):
        raise InputError(f"expected vectors of dimension {dim}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("vector entries must be finite")
    return arr


def check_matrix(matrix, dim: int) -> np.ndarray:
    """Square, finite and invertible (|det| ≥ 1e-12)."""
    arr = np.asarray(matrix, dtype=float)
    if arr.shape != (dim, dim):
        raise InputError(f"expected a {dim}x{dim} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix entries must be finite")
    if abs(np.linalg.det(arr)) < DET_GUARD:
        raise InputError("matrix is singular (|det| < 1e-12)")
    return arr


def check_count(count: int) -> int:
    if int(count) != count or count < 1:
        raise InputError(f"count must be a positive integer, got {count!r}")
    return int(count)


def check_positive(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise InputError(f"{name} must be a positive real, got {value}")
    return value
