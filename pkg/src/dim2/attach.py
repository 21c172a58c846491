"""
Attaching a planar face to the hull-type ball in R^3.

A convex polygon P lying in a plane H that separates it from C_λ, and
sitting inside B_λ, yields the intermediate polytope
conv(C_λ ∪ P ∪ −P) whose facets include P itself. Varying the shape of P
(its vertex count, say) changes the facet census, which is a linear
invariant of polytopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from src.bodies import Polytope3, embed_polygon_3d, facet_matches
from src.core.errors import ConstructionError, InputError
from src.core.guards import check_count, check_lambda
from src.core.protocol import AttachmentCertificate
from src.distance import PositionedPair
from src.geodesics import b_lambda, c_lambda, sandwich_check
from src.utils.config import section
from src.utils.logging import get_logger

from .separation import separation_witness

logger = get_logger(__name__)

# radius of the placed face relative to the room left inside B_λ
PLACEMENT_FRACTION = 0.5


@dataclass
class AttachmentResult:
    body: Polytope3
    certificate: AttachmentCertificate
    face: np.ndarray


def facet_census(poly: Polytope3) -> List[int]:
    """Sorted facet vertex counts of a 3D polytope."""
    if not isinstance(poly, Polytope3):
        raise InputError(f"facet census needs a 3D polytope, got {type(poly).__name__}")
    return poly.facet_census()


def regular_face(sides: int, phase: float = 0.0) -> np.ndarray:
    """Unit regular polygon in the plane, shape (sides, 2)."""
    sides = check_count(sides)
    if sides < 3:
        raise InputError(f"a face needs at least 3 vertices, got {sides}")
    angles = phase + 2.0 * math.pi * np.arange(sides) / sides
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _plane(face: np.ndarray, tol: float) -> tuple:
    """(normal, offset, in-plane basis) of a planar point set, offset > 0."""
    centre = face.mean(axis=0)
    _, singular, vt = np.linalg.svd(face - centre)
    scale = max(1.0, float(np.max(np.linalg.norm(face, axis=1))))
    if singular[1] <= tol * scale:
        raise InputError("face points are collinear; a 2D face is required")
    if singular[2] > tol * scale * math.sqrt(len(face)):
        raise InputError("face points are not coplanar", {"out_of_plane": float(singular[2])})
    normal = vt[2]
    offset = float(normal @ centre)
    if offset < 0:
        normal, offset = -normal, -offset
    if offset <= tol * scale:
        raise InputError("the plane of the face passes through the origin")
    return normal, offset, vt[:2]


def _check_convex_position(face: np.ndarray, basis: np.ndarray) -> None:
    flat = face @ basis.T
    try:
        hull = ConvexHull(flat)
    except QhullError as exc:
        raise InputError("face points do not span a polygon") from exc
    if len(hull.vertices) != len(face):
        raise InputError(
            "face points are not in convex position",
            {"hull_vertices": len(hull.vertices), "points": len(face)},
        )


def attach_face_3d(pair: PositionedPair, lam: float, face) -> AttachmentResult:
    """
    conv(C_λ ∪ face ∪ −face) with a certificate that it is intermediate and
    that *face* is one of its facets.
    """
    lam = check_lambda(lam, open_interval=True)
    if pair.dim != 3:
        raise InputError("face attachment is three-dimensional", {"dim": pair.dim})
    face = np.asarray(face, dtype=float)
    if face.ndim != 2 or face.shape[1] != 3 or len(face) < 3:
        raise InputError(f"a face is an (m, 3) array with m ≥ 3, got shape {face.shape}")
    if not np.all(np.isfinite(face)):
        raise InputError("face coordinates must be finite")

    tol = float(section("tolerances")["collinear"])
    normal, offset, basis = _plane(face, tol)
    _check_convex_position(face, basis)

    ball_B, ball_C = b_lambda(pair, lam), c_lambda(pair, lam)
    if not isinstance(ball_C, Polytope3):
        raise InputError("face attachment needs polytope balls", {"C_lambda": type(ball_C).__name__})
    support = ball_C.support(normal)
    if support >= offset:
        raise InputError(
            "the plane of the face does not separate it from C_λ",
            {"support": support, "offset": offset},
        )
    gauges = ball_B._gauge_rows(face)
    if np.any(gauges >= 1.0):
        raise InputError("face leaves B_λ", {"max_gauge": float(np.max(gauges))})

    body = Polytope3.from_points(np.vstack([ball_C.vertices_float, face]))
    sandwich = sandwich_check(body, pair, lam)
    certificate = AttachmentCertificate(
        lam=lam,
        sandwich_ok=sandwich.holds,
        face_vertices=len(face),
        facet_present=facet_matches(body, face),
        facet_census=body.facet_census(),
    )
    if not certificate.passed:
        raise ConstructionError(
            "attached polytope failed its certificate",
            certificate.model_dump(by_alias=True),
        )
    logger.info("attached a %d-gon at λ=%.4f: census %s", len(face), lam, certificate.facet_census)
    return AttachmentResult(body=body, certificate=certificate, face=face)


def place_face(pair: PositionedPair, lam: float, shape: Optional[np.ndarray] = None,
               seed: int = 0) -> np.ndarray:
    """
    Copy of a planar *shape* (default: triangle) placed in the separating
    plane around a separation witness, small enough to stay inside B_λ.
    """
    shape = regular_face(3) if shape is None else np.asarray(shape, dtype=float)
    if shape.ndim != 2 or shape.shape[1] != 2 or len(shape) < 3:
        raise InputError(f"a face shape is an (m, 2) array with m ≥ 3, got shape {shape.shape}")
    witness = separation_witness(pair, lam, seed=seed)
    x = np.asarray(witness.point)
    f = np.asarray(witness.functional)
    normal = f / np.linalg.norm(f)

    ball_B = b_lambda(pair, lam)
    if not isinstance(ball_B, Polytope3):
        raise InputError("face placement needs polytope balls", {"B_lambda": type(ball_B).__name__})
    rows = ball_B.facet_functionals
    room = float(np.min((1.0 - rows @ x) / np.linalg.norm(rows, axis=1)))

    centred = shape - shape.mean(axis=0)
    radius = PLACEMENT_FRACTION * room / float(np.max(np.linalg.norm(centred, axis=1)))
    return embed_polygon_3d(x, normal, radius * centred)
