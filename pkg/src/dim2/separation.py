"""
Separation witnesses between the extreme intermediate balls.

For a non-isometric positioned pair the hull-type ball C_λ sits strictly
inside the intersection-type ball B_λ. A witness is a point x with
gauge_{B_λ}(x) < 1 < gauge_{C_λ}(x) together with a functional f,
f(x) = 1 > sup over C_λ of f.

Search: locate a contact point of ∂B_E ∩ ∂B_F, then look along ∂B_F (a
uniform scan plus a geometric walk away from the contact) for points y
with gauge_E(y) < d^λ, which makes y a boundary point of B_λ. The one with
the largest gauge_{C_λ}(y) is pulled inward to x = y / sqrt(gauge_{C_λ}(y)),
which splits the room between the two balls evenly on the log scale.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from src.bodies import ConvexBody, circle_directions, sample_directions, supporting_functional
from src.core.errors import InputError, SearchError
from src.core.guards import check_lambda
from src.core.protocol import SeparationWitness
from src.distance import PositionedPair
from src.geodesics import b_lambda, c_lambda
from src.utils.config import section
from src.utils.logging import get_logger

logger = get_logger(__name__)

WALK_DEPTH = 40
CHUNK = 512


def _scan_gauges(body: ConvexBody, points: np.ndarray, directions: int) -> np.ndarray:
    """Exact gauges for polytopes; discretised dual sup ⟨u, y⟩ / h(u) otherwise."""
    if body.polyhedral or body.cheap_gauge:
        return body._gauge_rows(points)
    dirs = sample_directions(body.dim, directions, seed=0)
    support = body._support_rows(dirs)
    out = np.empty(len(points))
    for start in range(0, len(points), CHUNK):
        block = points[start:start + CHUNK] @ dirs.T
        out[start:start + CHUNK] = np.max(block / support[None, :], axis=1)
    return out


def _contact_angle(pair: PositionedPair, samples: int) -> Tuple[float, np.ndarray]:
    """Angle of ∂B_F where gauge_E is smallest (= 1 at a contact point)."""
    dirs = circle_directions(samples)
    values = pair.ball_E._gauge_rows(pair.ball_F.boundary_points(dirs))
    k = int(np.argmin(values))
    step = 2.0 * math.pi / samples

    def objective(theta: float) -> float:
        u = np.array([[math.cos(theta), math.sin(theta)]])
        return float(pair.ball_E._gauge_rows(pair.ball_F.boundary_points(u))[0])

    centre = 2.0 * math.pi * k / samples
    res = minimize_scalar(objective, bounds=(centre - step, centre + step), method="bounded",
                          options={"xatol": 1e-13})
    theta = float(res.x) if res.fun < values[k] else centre
    point = pair.ball_F.boundary_points(np.array([[math.cos(theta), math.sin(theta)]]))[0]
    return theta, point


def _candidates(pair: PositionedPair, samples: int, seed: int) -> Tuple[np.ndarray, np.ndarray, float]:
    """Boundary points of B_F to test, the contact point, and the finest walk step."""
    if pair.dim == 2:
        theta, contact = _contact_angle(pair, samples)
        offsets = [(math.pi / 2.0) * 2.0 ** (-j) for j in range(WALK_DEPTH + 1)]
        angles = np.array([theta + s * o for o in offsets for s in (-1.0, 1.0)])
        walk = np.column_stack([np.cos(angles), np.sin(angles)])
        dirs = np.vstack([circle_directions(samples), walk])
        return pair.ball_F.boundary_points(dirs), contact, offsets[-1]
    dirs = sample_directions(pair.dim, samples, seed)
    points = pair.ball_F.boundary_points(dirs)
    if pair.ball_F.polyhedral:
        points = np.vstack([points, pair.ball_F.vertices_float])
    contact = points[int(np.argmin(pair.ball_E._gauge_rows(points)))]
    return points, contact, 2.0 * math.pi / samples


def separation_witness(pair: PositionedPair, lam: float, seed: int = 0) -> SeparationWitness:
    """
    A point strictly between C_λ and B_λ with a separating functional.

    Raises SearchError when no boundary point clears C_λ at the finest
    resolution tried.
    """
    lam = check_lambda(lam, open_interval=True)
    if pair.isometric:
        raise InputError("separation needs a non-isometric pair (d > 1)", {"d": pair.d})
    search = section("search")
    samples = int(search["contact_samples"])
    ball_B, ball_C = b_lambda(pair, lam), c_lambda(pair, lam)
    threshold = pair.d ** lam

    points, contact, finest = _candidates(pair, samples, seed)
    admissible = points[pair.ball_E._gauge_rows(points) < threshold]
    if len(admissible) == 0:
        raise SearchError("no boundary point of B_F lies inside d^λ·B_E", {"finest_scale": finest})
    scores = _scan_gauges(ball_C, admissible, int(search["angular_samples"]))
    y = admissible[int(np.argmax(scores))]
    g_y = ball_C.gauge(y)
    if g_y <= 1.0:
        raise SearchError(
            "no candidate point leaves C_λ; the pair may be near-isometric or λ near 0 or 1",
            {"finest_scale": finest, "lambda": lam},
        )

    x = y / math.sqrt(g_y)
    margin_in = 1.0 - ball_B.gauge(x)
    margin_out = ball_C.gauge(x) - 1.0
    if margin_in <= 0.0 or margin_out <= 0.0:
        raise SearchError(
            "witness margins vanished",
            {"finest_scale": finest, "margin_in": margin_in, "margin_out": margin_out},
        )
    _, f = supporting_functional(ball_C, x)
    f = f / float(f @ x)
    support_c = ball_C.support(f)
    if support_c >= 1.0:
        raise SearchError("separating functional does not clear C_λ", {"support": support_c})
    logger.info(
        "separation witness at λ=%.4f: margin_in=%.3g margin_out=%.3g", lam, margin_in, margin_out
    )
    return SeparationWitness(
        lam=lam,
        point=x.tolist(),
        functional=f.tolist(),
        margin_out=margin_out,
        margin_in=margin_in,
        contact=np.asarray(contact).tolist(),
        support_c=support_c,
    )
