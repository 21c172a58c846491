"""Shared bodies and positioned pairs for the test suite."""

import json
import math

import numpy as np
import pytest

from src.bodies import Polygon2, dump_body, lp_ball, polygonize
from src.distance import positioned_by_identity


def random_polygon(rng: np.random.Generator, half: int = 6) -> Polygon2:
    """Symmetric polygon through *half* points on random radii and sorted angles in [0, π)."""
    angles = np.sort(rng.uniform(0.0, math.pi, half))
    radii = rng.uniform(0.6, 1.6, half)
    points = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    return Polygon2.from_points(points)


def identity_pairs(seed: int, count: int) -> list:
    """Seeded non-isometric random polygon pairs positioned by the identity."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        pair = positioned_by_identity(random_polygon(rng), random_polygon(rng))
        if not pair.isometric:
            pairs.append(pair)
    return pairs


def write_body(path, body) -> str:
    path.write_text(json.dumps(dump_body(body)))
    return str(path)


@pytest.fixture
def square():
    return lp_ball("inf", 2)


@pytest.fixture
def diamond():
    return lp_ball(1, 2)


@pytest.fixture
def disk():
    return lp_ball(2, 2)


@pytest.fixture
def disk64(disk):
    return polygonize(disk, 64)


@pytest.fixture
def cube():
    return lp_ball("inf", 3)


@pytest.fixture
def octahedron():
    return lp_ball(1, 3)


@pytest.fixture
def hexagon():
    """Non-regular hexagon whose edge triangles have areas 9/2, 4 and 3."""
    return Polygon2.from_points([(3, 0), (1, 3), (-2, 2)])


@pytest.fixture
def disk_square_pair(disk64, square):
    """Inscribed 64-gon and square, positioned by the identity (d ≈ √2)."""
    return positioned_by_identity(disk64, square)


@pytest.fixture
def octa_cube_pair(octahedron, cube):
    """Octahedron and cube, positioned by the identity (d = 3)."""
    return positioned_by_identity(octahedron, cube)


@pytest.fixture
def polygon_pairs():
    return identity_pairs(seed=7, count=5)
