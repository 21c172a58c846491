"""
Body JSON schema.

    { "kind": "polygon",      "vertices": [[x, y], ...] }      symmetric closure applied
    { "kind": "polytope3",    "vertices": [[x, y, z], ...] }
    { "kind": "lp",           "p": number | "inf", "dim": n }
    { "kind": "scaled",       "t": number, "of": <body> }
    { "kind": "linear_image", "matrix": [[...], ...], "of": <body> }
    { "kind": "intersection", "of": [<body>, <body>] }
    { "kind": "hull",         "of": [<body>, <body>] }

Parsing goes through a pydantic discriminated union and then through the
public operations, so a scaled polygon decodes to an exact polygon.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Union

from pydantic import BaseModel, Field, TypeAdapter, ValidationError, field_validator

from src.core.errors import InputError

from .base import ConvexBody
from .gauge import P_INF, GaugeBody, HullGauge, IntersectionGauge, LinearImage, LpNorm, Scaled
from .ops import hull_union, intersect, linear_image, lp_ball, scale
from .polygon import Polygon2
from .polytope import Polytope3


class PolygonSpec(BaseModel):
    kind: Literal["polygon"]
    vertices: List[List[float]] = Field(min_length=1)

    @field_validator("vertices")
    @classmethod
    def _planar(cls, value: List[List[float]]) -> List[List[float]]:
        if any(len(v) != 2 for v in value):
            raise ValueError("polygon vertices must have 2 coordinates")
        return value


class Polytope3Spec(BaseModel):
    kind: Literal["polytope3"]
    vertices: List[List[float]] = Field(min_length=1)

    @field_validator("vertices")
    @classmethod
    def _spatial(cls, value: List[List[float]]) -> List[List[float]]:
        if any(len(v) != 3 for v in value):
            raise ValueError("polytope3 vertices must have 3 coordinates")
        return value


class LpSpec(BaseModel):
    kind: Literal["lp"]
    p: Union[Literal["inf"], float]
    dim: int = Field(ge=2)


class ScaledSpec(BaseModel):
    kind: Literal["scaled"]
    t: float = Field(gt=0.0)
    of: "BodySpec"


class LinearImageSpec(BaseModel):
    kind: Literal["linear_image"]
    matrix: List[List[float]]
    of: "BodySpec"


class IntersectionSpec(BaseModel):
    kind: Literal["intersection"]
    of: List["BodySpec"] = Field(min_length=2, max_length=2)


class HullSpec(BaseModel):
    kind: Literal["hull"]
    of: List["BodySpec"] = Field(min_length=2, max_length=2)


BodySpec = Annotated[
    Union[PolygonSpec, Polytope3Spec, LpSpec, ScaledSpec, LinearImageSpec, IntersectionSpec, HullSpec],
    Field(discriminator="kind"),
]

for _model in (ScaledSpec, LinearImageSpec, IntersectionSpec, HullSpec):
    _model.model_rebuild()

_ADAPTER = TypeAdapter(BodySpec)


# ── decode ──────────────────────────────────────────────────────────────────────

def _build(spec) -> ConvexBody:
    if isinstance(spec, PolygonSpec):
        return Polygon2.from_points(spec.vertices)
    if isinstance(spec, Polytope3Spec):
        return Polytope3.from_points(spec.vertices)
    if isinstance(spec, LpSpec):
        return lp_ball(spec.p, spec.dim)
    if isinstance(spec, ScaledSpec):
        return scale(_build(spec.of), spec.t)
    if isinstance(spec, LinearImageSpec):
        return linear_image(_build(spec.of), spec.matrix)
    if isinstance(spec, IntersectionSpec):
        return intersect(_build(spec.of[0]), _build(spec.of[1]))
    return hull_union(_build(spec.of[0]), _build(spec.of[1]))


def parse_body(obj: Dict[str, Any]) -> ConvexBody:
    """Validate a decoded JSON object and build the body it describes."""
    try:
        spec = _ADAPTER.validate_python(obj)
    except ValidationError as exc:
        errors = [{"loc": [str(p) for p in e["loc"]], "msg": e["msg"]} for e in exc.errors()]
        raise InputError("malformed body description", {"errors": errors}) from exc
    return _build(spec)


def load_body(path) -> ConvexBody:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read body file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"body file {path} is not valid JSON: {exc.msg}") from exc
    return parse_body(obj)


# ── encode ──────────────────────────────────────────────────────────────────────

def dump_body(body: ConvexBody) -> Dict[str, Any]:
    """JSON-ready description that re-parses to a gauge-identical body."""
    if isinstance(body, Polygon2):
        return {"kind": "polygon", "vertices": body.vertices_float.tolist()}
    if isinstance(body, Polytope3):
        return {"kind": "polytope3", "vertices": body.vertices_float.tolist()}
    if not isinstance(body, GaugeBody):
        raise InputError(f"cannot serialise {type(body).__name__}")
    desc = body.descriptor
    if isinstance(desc, LpNorm):
        return {"kind": "lp", "p": P_INF if desc.p == P_INF else float(desc.p), "dim": desc.dim}
    if isinstance(desc, Scaled):
        return {"kind": "scaled", "t": float(desc.t), "of": dump_body(desc.body)}
    if isinstance(desc, LinearImage):
        return {"kind": "linear_image", "matrix": desc.array.tolist(), "of": dump_body(desc.body)}
    if isinstance(desc, IntersectionGauge):
        return {"kind": "intersection", "of": [dump_body(desc.a), dump_body(desc.b)]}
    if isinstance(desc, HullGauge):
        return {"kind": "hull", "of": [dump_body(desc.a), dump_body(desc.b)]}
    raise InputError(f"cannot serialise descriptor {desc!r}")
