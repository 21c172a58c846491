"""
Extreme geodesics and sampled paths.

For a positioned pair B_E ⊆ B_F ⊆ d·B_E:

    B_λ = (d^λ·B_E) ∩ B_F                 intersection type
    C_λ = conv(B_E ∪ d^{λ−1}·B_F)         hull type

Both run from B_E (λ = 0) to B_F (λ = 1) and satisfy the product law
d(γ(s), γ(t)) = d^{t−s} with fixed-position distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

from src.bodies import ConvexBody, P_INF, enclosing_factor, gauge_equal, hull_union, intersect, lp_ball, scale
from src.core.errors import InputError, VerificationError
from src.core.guards import check_grid, check_lambda, uniform_grid
from src.core.protocol import PathKind
from src.distance import PositionedPair, fixed_position_distance
from src.distance.lp import known_lp_distance, reciprocal_exponent
from src.bodies.ops import normalize_exponent
from src.utils.config import section
from src.utils.logging import get_logger

logger = get_logger(__name__)

# λ values closer than this name the same sample
LAMBDA_MATCH = 1e-12


def b_lambda(pair: PositionedPair, lam: float) -> ConvexBody:
    """(d^λ·B_E) ∩ B_F."""
    lam = check_lambda(lam)
    return intersect(scale(pair.ball_E, pair.d ** lam), pair.ball_F)


def c_lambda(pair: PositionedPair, lam: float) -> ConvexBody:
    """conv(B_E ∪ d^{λ−1}·B_F)."""
    lam = check_lambda(lam)
    return hull_union(pair.ball_E, scale(pair.ball_F, pair.d ** (lam - 1.0)))


@dataclass
class GeodesicPath:
    """
    A λ-parametrised family of bodies from pair.ball_E to pair.ball_F.

    ``samples`` holds the bodies on the grid; ``builder`` produces a body at
    any other λ. Concatenations keep their segments and junction λ values.
    """
    pair: PositionedPair
    kind: PathKind
    samples: List[Tuple[float, ConvexBody]]
    builder: Callable[[float], ConvexBody] = field(repr=False)
    segments: Tuple["GeodesicPath", ...] = ()
    junctions: Tuple[float, ...] = ()

    def __post_init__(self):
        lambdas = [lam for lam, _ in self.samples]
        check_grid(lambdas)

    @property
    def lambdas(self) -> List[float]:
        return [lam for lam, _ in self.samples]

    @property
    def d(self) -> float:
        return self.pair.d

    def body_at(self, lam: float) -> ConvexBody:
        lam = check_lambda(lam)
        for sample_lam, body in self.samples:
            if abs(sample_lam - lam) <= LAMBDA_MATCH:
                return body
        return self.builder(lam)


def _check_inclusions(pair: PositionedPair, samples: List[Tuple[float, ConvexBody]]) -> None:
    slack = float(section("tolerances")["inclusion"])
    for lam, body in samples:
        lower = enclosing_factor(body, pair.ball_E)
        upper = enclosing_factor(pair.ball_F, body)
        if lower > 1.0 + slack or upper > 1.0 + slack:
            raise VerificationError(
                f"sample at λ={lam:.6f} leaves the band B_E ⊆ · ⊆ B_F",
                {"lambda": lam, "e_in_body": lower, "body_in_f": upper},
            )


def build_path(pair: PositionedPair, kind, lambdas: Optional[Sequence[float]] = None) -> GeodesicPath:
    """Sample B_λ (intersection) or C_λ (hull) on a grid with endpoints 0 and 1."""
    kind = PathKind(kind)
    if kind not in (PathKind.INTERSECTION, PathKind.HULL):
        raise InputError(f"build_path constructs intersection or hull paths, got {kind.value}")
    grid = check_grid(lambdas) if lambdas is not None else uniform_grid(int(section("geodesic")["default_grid"]))
    builder = partial(b_lambda if kind is PathKind.INTERSECTION else c_lambda, pair)
    samples = [(lam, builder(lam)) for lam in grid]
    _check_inclusions(pair, samples)
    logger.info("built %s path: d=%.10g, %d samples", kind.value, pair.d, len(samples))
    return GeodesicPath(pair=pair, kind=kind, samples=samples, builder=builder)


def constant_path(body: ConvexBody) -> GeodesicPath:
    """The path that stays at *body*; its pair has d = 1."""
    pair = PositionedPair(body, body, 1.0)
    return GeodesicPath(
        pair=pair,
        kind=PathKind.INTERSECTION,
        samples=[(0.0, body), (1.0, body)],
        builder=lambda lam: body,
    )


# ── intermediate spaces and joining ─────────────────────────────────────────────

def is_intermediate(ball_E: ConvexBody, ball_X: ConvexBody, ball_F: ConvexBody,
                    tol: Optional[float] = None) -> Tuple[bool, float]:
    """
    Whether d(E, F) = d(E, X)·d(X, F) with fixed-position distances.

    Returns (verdict, λ) where d(E, X) = d(E, F)^λ (λ = 0 when d(E, F) = 1).
    """
    tol = tol if tol is not None else float(section("tolerances")["identity"])
    d = fixed_position_distance(ball_E, ball_F)
    d_ex = fixed_position_distance(ball_E, ball_X)
    d_xf = fixed_position_distance(ball_X, ball_F)
    verdict = abs(d_ex * d_xf - d) <= tol * d
    lam = math.log(d_ex) / math.log(d) if d > 1.0 + tol else 0.0
    return verdict, min(max(lam, 0.0), 1.0)


def join_geodesics(first: GeodesicPath, second: GeodesicPath) -> GeodesicPath:
    """
    Concatenate E→X and X→F into E→F, reparametrised by log-distance.

    The junction sits at λ* = log d₁ / (log d₁ + log d₂). A constant piece is
    dropped and the other path returned unchanged.
    """
    identity_tol = float(section("tolerances")["identity"])
    if not gauge_equal(first.body_at(1.0), second.body_at(0.0)):
        raise InputError("junction mismatch: the first path does not end where the second starts")
    d1, d2 = first.d, second.d
    if d1 <= 1.0 + identity_tol:
        return second
    if d2 <= 1.0 + identity_tol:
        return first

    ball_E, ball_X, ball_F = first.pair.ball_E, first.body_at(1.0), second.pair.ball_F
    verdict, _ = is_intermediate(ball_E, ball_X, ball_F)
    if not verdict:
        raise InputError(
            "junction body is not an intermediate space between the endpoints",
            {"d_first": d1, "d_second": d2, "d_total": fixed_position_distance(ball_E, ball_F)},
        )
    pair = PositionedPair(ball_E, ball_F, d1 * d2)
    junction = math.log(d1) / (math.log(d1) + math.log(d2))

    def builder(lam: float) -> ConvexBody:
        if lam <= junction:
            return first.body_at(lam / junction)
        return second.body_at((lam - junction) / (1.0 - junction))

    samples = [(lam * junction, body) for lam, body in first.samples]
    samples += [
        (junction + lam * (1.0 - junction), body) for lam, body in second.samples if lam > 0.0
    ]
    samples[-1] = (1.0, samples[-1][1])
    logger.info("joined geodesics at λ*=%.6f (d1=%.6g, d2=%.6g)", junction, d1, d2)
    return GeodesicPath(
        pair=pair,
        kind=PathKind.CONCATENATION,
        samples=samples,
        builder=builder,
        segments=(first, second),
        junctions=(junction,),
    )


# ── classical ℓ_p paths ─────────────────────────────────────────────────────────

def lp_path(p_start, p_end, dim: int, lambdas: Optional[Sequence[float]] = None) -> GeodesicPath:
    """
    {ℓ_q^n} between two exponents on the same side of 2, with
    1/q(λ) = (1 − λ)/p_start + λ/p_end, each ball scaled to contain B_E.
    """
    p_start, p_end = normalize_exponent(p_start), normalize_exponent(p_end)
    known = known_lp_distance(p_start, p_end, dim)
    ball_E = lp_ball(p_start, dim)
    grid = check_grid(lambdas) if lambdas is not None else uniform_grid(int(section("geodesic")["default_grid"]))
    r0, r1 = reciprocal_exponent(p_start), reciprocal_exponent(p_end)

    def builder(lam: float) -> ConvexBody:
        recip = (1.0 - lam) * r0 + lam * r1
        q = P_INF if recip <= 0.0 else 1.0 / recip
        ball = lp_ball(q, dim)
        return scale(ball, enclosing_factor(ball, ball_E))

    ball_F = builder(1.0)
    pair = PositionedPair(ball_E, ball_F, max(1.0, enclosing_factor(ball_E, ball_F)))
    if abs(pair.d - known) > float(section("tolerances")["identity"]) * known:
        raise VerificationError(
            "standard position does not reproduce the ℓ_p distance",
            {"d": pair.d, "expected": known},
        )
    samples = [(lam, ball_E if lam == 0.0 else builder(lam)) for lam in grid]
    return GeodesicPath(pair=pair, kind=PathKind.CLASSICAL, samples=samples, builder=builder)
