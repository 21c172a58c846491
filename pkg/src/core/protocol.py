"""
Report and record models

Pydantic schemas for everything the library hands back to callers and the
CLI / service serialise: distance reports, optimizer settings, verification
records and certificates. Geometric carriers (bodies, positioned pairs,
paths) are plain dataclasses in their own packages.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class PathKind(str, Enum):
    """Kinds of sampled geodesic paths"""
    INTERSECTION = "intersection"
    HULL = "hull"
    CONCATENATION = "concatenation"
    CLASSICAL = "classical"


class OptimizerConfig(BaseModel):
    """
    Settings of the multi-start Nelder–Mead search over GL(n)
    """
    starts: int = Field(default=32, ge=1, description="Number of independent starts")
    max_iters: int = Field(default=2000, ge=1, description="Iteration cap per start")
    tol: float = Field(default=1e-6, gt=0.0, description="Simplex diameter / value tolerance")
    seed: int = Field(default=0, description="Base seed; start k uses seed + k")

    @classmethod
    def from_config(cls, overrides: Optional[Dict[str, Any]] = None) -> "OptimizerConfig":
        """Defaults from config.yaml's ``optimizer`` block, then *overrides* (None values ignored)."""
        from src.utils.config import section

        values = section("optimizer")
        values.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls(**values)


class DistanceReport(BaseModel):
    """
    Result of a Banach–Mazur distance run.

    ``estimate`` is always an upper bound: it is the distortion of the
    returned witness map, optimally scaled.
    """
    estimate: float = Field(ge=1.0, description="Distortion of the witness map")
    witness: List[List[float]] = Field(description="Invertible matrix T, |det T| = 1")
    factor_in: float = Field(gt=0.0, description="Smallest L with T(B_E) ⊆ L·B_F")
    factor_out: float = Field(gt=0.0, description="Smallest L with B_F ⊆ L·T(B_E)")
    starts_used: int = Field(ge=0)
    converged: bool = True

    @model_validator(mode="after")
    def _product(self) -> "DistanceReport":
        product = self.factor_in * self.factor_out
        if abs(self.estimate - product) > 1e-12 * max(1.0, product):
            raise ValueError(
                f"estimate {self.estimate} != factor_in*factor_out {product}"
            )
        return self

    @classmethod
    def build(cls, witness, factor_in: float, factor_out: float,
              starts_used: int, converged: bool) -> "DistanceReport":
        """Derive ``estimate`` from the two factors (clamped at 1 against rounding)."""
        product = factor_in * factor_out
        if product < 1.0:
            # the product of the factors is >= 1 mathematically
            factor_out = 1.0 / factor_in
            product = 1.0
        return cls(
            estimate=product,
            witness=[[float(v) for v in row] for row in witness],
            factor_in=float(factor_in),
            factor_out=float(factor_out),
            starts_used=starts_used,
            converged=converged,
        )

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "estimate": self.estimate,
            "witness": self.witness,
            "factor_in": self.factor_in,
            "factor_out": self.factor_out,
            "converged": self.converged,
            "starts_used": self.starts_used,
        }


class _LambdaRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda", ge=0.0, le=1.0)


class InclusionReport(_LambdaRecord):
    """Slack of each link of B_E ⊆ C_λ ⊆ B_λ ⊆ B_F (1 − enclosing factor)."""
    holds: bool
    slacks: Dict[str, float]


class ExtremeDistances(_LambdaRecord):
    """Fixed-position distances around the two extreme intermediate spaces."""
    d: float
    e_to_b: float = Field(description="d(E, E_λ)")
    b_to_f: float = Field(description="d(E_λ, F)")
    e_to_c: float = Field(description="d(E, F_λ)")
    c_to_f: float = Field(description="d(F_λ, F)")


class PartitionCheck(BaseModel):
    """Pairwise fixed-position distances along one partition of [0, 1]."""
    partition: List[float]
    pairwise: List[float]
    expected: List[float] = Field(description="d^{Δλ} per sub-interval")
    product: float
    target: float

    @model_validator(mode="after")
    def _product(self) -> "PartitionCheck":
        if len(self.pairwise) != max(len(self.partition) - 1, 0):
            raise ValueError("one pairwise distance per sub-interval expected")
        product = math.prod(self.pairwise)
        if abs(product - self.product) > 1e-12 * max(1.0, product):
            raise ValueError("product does not match the pairwise factors")
        return self


class SandwichReport(_LambdaRecord):
    """Outcome of testing C_λ ⊆ B_X ⊆ B_λ (plus multiplicativity when it holds)."""
    holds: bool
    lower_factor: float = Field(description="enclosing_factor(B_X, C_λ); ≤ 1 when C_λ ⊆ B_X")
    upper_factor: float = Field(description="enclosing_factor(B_λ, B_X); ≤ 1 when B_X ⊆ B_λ")
    d_ex: Optional[float] = None
    d_xf: Optional[float] = None
    target: float

    def __bool__(self) -> bool:
        return self.holds


class AreaRatioInvariant(BaseModel):
    """Sorted set of triangle-area ratios A_K of a symmetric polygon."""
    ratios: List[float]

    @field_validator("ratios")
    @classmethod
    def _positive_sorted(cls, value: List[float]) -> List[float]:
        if any(r <= 0 for r in value):
            raise ValueError("area ratios must be positive")
        return sorted(value)

    def contains(self, value: float, rel_tol: float) -> bool:
        return any(math.isclose(value, r, rel_tol=rel_tol, abs_tol=0.0) for r in self.ratios)


class SeparationWitness(_LambdaRecord):
    """
    A point strictly inside B_λ and strictly outside C_λ, with a linear
    functional f normalised to f(point) = 1 and sup over C_λ of f < 1.
    """
    point: List[float]
    functional: List[float]
    margin_out: float = Field(gt=0.0, description="gauge_{C_λ}(point) − 1")
    margin_in: float = Field(gt=0.0, description="1 − gauge_{B_λ}(point)")
    contact: List[float] = Field(description="Contact point of ∂B_E ∩ ∂B_F the search started from")
    support_c: float = Field(description="sup over C_λ of the functional")


class FamilyCertificate(_LambdaRecord):
    """Per-member certificate of a B_q family."""
    sandwich_ok: bool
    new_faces: List[List[List[float]]]
    ratio: float
    invariant_sample: List[float]
    face_line_ok: bool
    distinct_ok: bool

    @property
    def passed(self) -> bool:
        return self.sandwich_ok and self.face_line_ok and self.distinct_ok


class AttachmentCertificate(_LambdaRecord):
    """Certificate of one n = 3 face attachment."""
    sandwich_ok: bool
    face_vertices: int
    facet_present: bool
    facet_census: List[int]

    @property
    def passed(self) -> bool:
        return self.sandwich_ok and self.facet_present


class PathManifest(BaseModel):
    """Manifest written next to an exported geodesic path."""
    kind: PathKind
    d: float
    lambdas: List[float]
    files: List[str]
    ball_E: Dict[str, Any]
    ball_F: Dict[str, Any]
