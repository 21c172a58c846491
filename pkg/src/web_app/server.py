"""FastAPI server for bmgeodesics."""

# Load .env first so BMG_CONFIG / BMG_LOG_LEVEL apply to the imports below.
from dotenv import load_dotenv
load_dotenv()

from typing import Any, Dict, List, Literal, Optional

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from src.bodies import dump_body, linear_image, parse_body
from src.core.errors import BMGeodesicError, InputError
from src.core.guards import check_grid, check_matrix
from src.core.protocol import DistanceReport, OptimizerConfig, PathKind, PathManifest
from src.dim2 import area_ratios, edge_census
from src.distance import bm_distance, canonical_position, fixed_position_factors, positioned_by_identity
from src.geodesics import build_path, geodesic_product_check
from src.utils.logging import get_logger

logger = get_logger(__name__)

app = FastAPI(
    title="bmgeodesics",
    description=(
        "Banach–Mazur distances and extreme geodesics between symmetric convex bodies. "
        "Bodies use the same JSON schema as the command line."
    ),
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


# ── Request models ─────────────────────────────────────────────────────────────

class DistanceRequest(BaseModel):
    a: Dict[str, Any]
    b: Dict[str, Any]
    fixed_position: bool = False
    starts: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None

    model_config = {
        "json_schema_extra": {
            "example": {
                "a": {"kind": "lp", "p": 2, "dim": 2},
                "b": {"kind": "lp", "p": "inf", "dim": 2},
            }
        }
    }


class InvariantRequest(BaseModel):
    body: Dict[str, Any]
    map: Optional[List[List[float]]] = None


class GeodesicRequest(BaseModel):
    a: Dict[str, Any]
    b: Dict[str, Any]
    kind: Literal["intersection", "hull"] = "intersection"
    lambdas: List[float] = Field(default_factory=lambda: [k / 10 for k in range(11)])
    fixed_position: bool = False


def _http_error(exc: BMGeodesicError) -> HTTPException:
    status = 422 if isinstance(exc, InputError) else 409
    return HTTPException(status_code=status, detail=exc.to_dict())


# ── Routes ─────────────────────────────────────────────────────────────────────

@app.get("/health", summary="Health check")
def health_check() -> dict:
    """Returns 200 OK when the service is running."""
    return {"status": "ok"}


@app.post("/distance", summary="Banach–Mazur distance of two bodies")
def distance(request: DistanceRequest) -> dict:
    logger.info("POST /distance  fixed_position=%s", request.fixed_position)
    try:
        a, b = parse_body(request.a), parse_body(request.b)
        if request.fixed_position:
            factor_in, factor_out = fixed_position_factors(a, b)
            report = DistanceReport.build(np.eye(a.dim), factor_in, factor_out, 0, True)
        else:
            cfg = OptimizerConfig.from_config({"starts": request.starts, "seed": request.seed})
            report = bm_distance(a, b, cfg)
    except BMGeodesicError as exc:
        raise _http_error(exc) from exc
    return report.to_json_dict()


@app.post("/invariant", summary="Triangle-area-ratio invariant of a polygon")
def invariant(request: InvariantRequest) -> dict:
    try:
        body = parse_body(request.body)
        if request.map is not None:
            check_matrix(request.map, body.dim)
            body = linear_image(body, request.map)
        ratios = area_ratios(body)
        return {"ratios": ratios.ratios, **edge_census(body)}
    except BMGeodesicError as exc:
        raise _http_error(exc) from exc


@app.post("/geodesic", summary="Sample an extreme geodesic")
def geodesic(request: GeodesicRequest) -> dict:
    logger.info("POST /geodesic  kind=%s  points=%d", request.kind, len(request.lambdas))
    try:
        grid = check_grid(request.lambdas)
        a, b = parse_body(request.a), parse_body(request.b)
        pair = positioned_by_identity(a, b) if request.fixed_position else canonical_position(a, b)
        path = build_path(pair, request.kind, grid)
        check = geodesic_product_check(path, grid)
    except BMGeodesicError as exc:
        raise _http_error(exc) from exc
    manifest = PathManifest(
        kind=PathKind(request.kind),
        d=path.d,
        lambdas=path.lambdas,
        files=[],
        ball_E=dump_body(pair.ball_E),
        ball_F=dump_body(pair.ball_F),
    )
    return {
        "manifest": manifest.model_dump(mode="json"),
        "bodies": [dump_body(body) for _, body in path.samples],
        "converged": pair.converged,
        "product_check": check.model_dump(),
    }


# ── Entry point (local dev) ────────────────────────────────────────────────────

if __name__ == "__main__":
    import uvicorn

    from src.utils.config import section

    _server_cfg = section("server")
    uvicorn.run(
        "src.web_app.server:app",
        host=_server_cfg.get("host", "0.0.0.0"),
        port=int(_server_cfg.get("port", 8000)),
        reload=True,
    )
