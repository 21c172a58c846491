"""
Families of pairwise non-isometric intermediate polygons.

Around a separation witness x with functional f (f(x) = 1 > sup_{C_λ} f):

- p₁, p₂ = x ∓ ε·t on the line H = {f = 1}, t the counterclockwise tangent;
- q runs along the segment [q₁, q₂] parallel to H just outside it;
- B_q = conv(C_λ ∪ {±p₁, ±p₂, ±q}).

Every B_q lies between C_λ and B_λ, so it is intermediate. [p₁, q] and
[q, p₂] are edges of B_q, and the ratio μ(0 p₁ q) / μ(0 q p₂) belongs to
A_{B_q}; choosing q's with distinct ratios gives distinct invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

import numpy as np

from src.bodies import Polygon2, hull_union, polygonize, snap
from src.bodies.polygon import Point, det, orient
from src.core.errors import ConstructionError, InputError
from src.core.guards import check_count, check_lambda
from src.core.protocol import AreaRatioInvariant, FamilyCertificate, SeparationWitness
from src.distance import PositionedPair, positioned_by_identity
from src.geodesics import b_lambda, c_lambda, sandwich_check
from src.utils.config import section
from src.utils.logging import get_logger

from .faces import area_ratios, faces_1d, invariant_distinct
from .separation import separation_witness

logger = get_logger(__name__)

MAX_HALVINGS = 60
# q segment: half-width along H relative to ε, height above H relative to δ
Q_SPREAD = 0.9
Q_HEIGHT = 0.25
# targets tried per requested member before giving up
OVERSAMPLING = 4


def face_line_clear(p: Point, q: Point, ball_C: Polygon2) -> bool:
    """Exact test: the line through p and q misses C (all vertices strictly on one side)."""
    sides = [orient(p, q, v) for v in ball_C.vertices]
    return all(s > 0 for s in sides) or all(s < 0 for s in sides)


def _exact(v: np.ndarray) -> Point:
    return (snap(v[0]), snap(v[1]))


def area_ratio(p1: Point, q: Point, p2: Point) -> Fraction:
    """μ(0 p₁ q) / μ(0 q p₂)."""
    return abs(det(p1, q)) / abs(det(q, p2))


@dataclass
class BqFamily:
    """Members of a family with their certificates and the frame they were built in."""
    pair: PositionedPair
    lam: float
    witness: SeparationWitness
    ball_B: Polygon2
    ball_C: Polygon2
    segment: Tuple[Point, Point]
    bodies: List[Polygon2] = field(default_factory=list)
    certificates: List[FamilyCertificate] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.bodies)

    def __iter__(self) -> Iterator[Polygon2]:
        return iter(self.bodies)

    def __getitem__(self, index: int) -> Polygon2:
        return self.bodies[index]


def polygon_pair(pair: PositionedPair, sides: Optional[int] = None) -> PositionedPair:
    """Replace non-polygon balls by inscribed polygons and re-position by the identity."""
    if pair.dim != 2:
        raise InputError("the B_q construction is two-dimensional")
    if isinstance(pair.ball_E, Polygon2) and isinstance(pair.ball_F, Polygon2):
        return pair
    ball_E, ball_F = polygonize(pair.ball_E, sides), polygonize(pair.ball_F, sides)
    positioned = positioned_by_identity(ball_E, ball_F)
    logger.info("polygonized pair: d %.10g -> %.10g", pair.d, positioned.d)
    return positioned


def _frame(witness: SeparationWitness, ball_B: Polygon2, ball_C: Polygon2) -> Tuple[np.ndarray, ...]:
    x = np.asarray(witness.point)
    f = np.asarray(witness.functional)
    normal = f / np.linalg.norm(f)
    tangent = np.array([-normal[1], normal[0]])
    gap_c = (1.0 - ball_C.support(f)) / np.linalg.norm(f)
    rows = ball_B.facet_functionals
    gap_b = float(np.min((1.0 - rows @ x) / np.linalg.norm(rows, axis=1)))
    return x, normal, tangent, min(gap_c, gap_b)


def _choose_epsilon(x, tangent, gap: float, ball_B: Polygon2) -> Tuple[float, Point, Point]:
    eps = gap / 8.0
    for _ in range(MAX_HALVINGS):
        p1, p2 = _exact(x - eps * tangent), _exact(x + eps * tangent)
        if ball_B.gauge_exact(p1) < 1 and ball_B.gauge_exact(p2) < 1:
            return eps, p1, p2
        logger.debug("halving ε below %.3g", eps)
        eps /= 2.0
    raise ConstructionError("no ε keeps [p₁, p₂] inside B_λ", {"finest_epsilon": eps})


def _choose_delta(x, normal, tangent, eps: float, p1: Point, p2: Point,
                  ball_B: Polygon2, ball_C: Polygon2) -> Tuple[Point, Point]:
    """Endpoints of the q segment: ±0.9ε along H, lifted by δ/4 with δ halved until the face lines clear C."""
    delta = eps
    spread = Q_SPREAD * eps * tangent
    for _ in range(MAX_HALVINGS):
        lift = Q_HEIGHT * delta * normal
        q1 = _exact(x - spread + lift)
        q2 = _exact(x + spread + lift)
        lines_clear = all(
            face_line_clear(a, b, ball_C) for a, b in ((p1, q1), (p1, q2), (q1, p2), (q2, p2))
        )
        if lines_clear and ball_B.gauge_exact(q1) < 1 and ball_B.gauge_exact(q2) < 1:
            return q1, q2
        logger.debug("halving δ below %.3g", delta)
        delta /= 2.0
    raise ConstructionError("no δ clears the face lines", {"finest_delta": delta})


def _point_on(q1: Point, q2: Point, s: float) -> np.ndarray:
    a, b = np.array([float(v) for v in q1]), np.array([float(v) for v in q2])
    return a + s * (b - a)


def _parameter_for(ratio: float, p1: Point, p2: Point, q1: Point, q2: Point) -> float:
    """Invert the Möbius map s ↦ μ(0 p₁ q(s)) / μ(0 q(s) p₂) along [q₁, q₂]."""
    a = [float(v) for v in q1]
    b = [float(v) for v in q2]
    d = (b[0] - a[0], b[1] - a[1])
    fp1 = (float(p1[0]), float(p1[1]))
    fp2 = (float(p2[0]), float(p2[1]))
    num0 = fp1[0] * a[1] - fp1[1] * a[0]
    num1 = fp1[0] * d[1] - fp1[1] * d[0]
    den0 = a[0] * fp2[1] - a[1] * fp2[0]
    den1 = d[0] * fp2[1] - d[1] * fp2[0]
    return (ratio * den0 - num0) / (num1 - ratio * den1)


def _spread_order(n: int) -> List[int]:
    """Indices 0..n-1 ordered so early picks are spread over the range."""
    order, seen, step = [], set(), 1 << max(0, (n - 1).bit_length())
    while step >= 1:
        for i in range(0, n, step):
            if i not in seen:
                seen.add(i)
                order.append(i)
        step //= 2
    return order


def bq_family(pair: PositionedPair, lam: float, count: int) -> BqFamily:
    """
    ``count`` certified intermediate polygons with pairwise distinct invariants.

    Non-polygon pairs are polygonized first; the returned family carries the
    pair it was built in. Raises ConstructionError when the requested number
    of admissible q's cannot be placed.
    """
    lam = check_lambda(lam, open_interval=True)
    count = check_count(count)
    pair = polygon_pair(pair)
    ball_B, ball_C = b_lambda(pair, lam), c_lambda(pair, lam)
    witness = separation_witness(pair, lam)

    x, normal, tangent, gap = _frame(witness, ball_B, ball_C)
    eps, p1, p2 = _choose_epsilon(x, tangent, gap, ball_B)
    q1, q2 = _choose_delta(x, normal, tangent, eps, p1, p2, ball_B, ball_C)

    rho_lo, rho_hi = sorted((float(area_ratio(p1, q1, p2)), float(area_ratio(p1, q2, p2))))
    slots = OVERSAMPLING * count
    spacing = (rho_hi - rho_lo) / (slots + 1)
    min_gap = float(section("family")["ratio_gap"])
    if spacing < min_gap:
        raise ConstructionError(
            "ratio range too narrow for the requested count; try a smaller count or another λ",
            {"ratio_range": [rho_lo, rho_hi], "count": count},
        )

    family = BqFamily(pair=pair, lam=lam, witness=witness, ball_B=ball_B, ball_C=ball_C, segment=(p1, p2))
    invariant_C, invariant_B = area_ratios(ball_C), area_ratios(ball_B)
    accepted: List[AreaRatioInvariant] = []
    for k in _spread_order(slots):
        if len(family.bodies) == count:
            break
        target = rho_lo + (k + 1) * spacing
        s = _parameter_for(target, p1, p2, q1, q2)
        if not 0.0 < s < 1.0:
            continue
        q = _exact(_point_on(q1, q2, s))
        body, certificate, invariant = _member(pair, lam, ball_C, p1, q, p2)
        distinct = all(invariant_distinct(invariant, other) for other in [invariant_C, invariant_B, *accepted])
        certificate = certificate.model_copy(update={"distinct_ok": distinct})
        if not certificate.passed:
            logger.debug("rejected q at ratio %.6g (sandwich=%s faces=%s distinct=%s)",
                         target, certificate.sandwich_ok, certificate.face_line_ok, distinct)
            continue
        accepted.append(invariant)
        family.bodies.append(body)
        family.certificates.append(certificate)

    if len(family.bodies) < count:
        raise ConstructionError(
            f"only {len(family.bodies)} of {count} members could be certified; "
            "try a smaller count or another λ",
            {"placed": len(family.bodies), "count": count, "lambda": lam},
        )
    logger.info("B_q family at λ=%.4f: %d certified members", lam, count)
    return family


def _member(pair: PositionedPair, lam: float, ball_C: Polygon2,
            p1: Point, q: Point, p2: Point) -> Tuple[Polygon2, FamilyCertificate, AreaRatioInvariant]:
    body = hull_union(ball_C, Polygon2.from_points([p1, q, p2]))
    sandwich = sandwich_check(body, pair, lam)
    edges = faces_1d(body)
    has_edges = any(e.matches(p1, q) for e in edges) and any(e.matches(q, p2) for e in edges)
    lines_clear = face_line_clear(p1, q, ball_C) and face_line_clear(q, p2, ball_C)
    ratio = area_ratio(p1, q, p2)
    invariant = area_ratios(body)
    ratio_present = invariant.contains(float(ratio), rel_tol=float(section("tolerances")["ratio"]))
    certificate = FamilyCertificate(
        lam=lam,
        sandwich_ok=sandwich.holds,
        new_faces=[
            [[float(c) for c in p1], [float(c) for c in q]],
            [[float(c) for c in q], [float(c) for c in p2]],
        ],
        ratio=float(ratio),
        invariant_sample=sorted([float(ratio), float(1 / ratio)]),
        # the exact line test, the hull output and the invariant must agree
        face_line_ok=has_edges and lines_clear and ratio_present,
        distinct_ok=False,
    )
    return body, certificate, invariant
