"""
Command-line surface: dist, geodesic, verify, invariant, family.

Every command prints one JSON document on stdout and returns the process
exit code; logs go to stderr. Library errors are caught once in ``main``
and rendered as ``{"error": ..., "message": ..., ...}`` with the exit code
the exception carries.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from src.bodies import ConvexBody, dump_body, linear_image, load_body
from src.core.errors import BMGeodesicError, InputError, OptimizerError, VerificationError
from src.core.guards import check_matrix, parse_grid_list, parse_grid_spec, uniform_grid
from src.core.protocol import DistanceReport, OptimizerConfig, PathKind
from src.dim2 import (
    attach_face_3d,
    area_ratios,
    bq_family,
    edge_census,
    place_face,
    regular_face,
)
from src.distance import (
    PositionedPair,
    bm_distance,
    canonical_position,
    fixed_position_factors,
    positioned_by_identity,
)
from src.geodesics import (
    build_path,
    export_path,
    geodesic_product_check,
    load_path,
)
from src.utils.config import section
from src.utils.logging import get_logger
from src.utils.serialize import dumps, write_json

logger = get_logger(__name__)

SUCCESS = 0


# ── helpers ────────────────────────────────────────────────────────────────────

def _emit(payload: Dict[str, Any]) -> None:
    sys.stdout.write(dumps(payload) + "\n")
    sys.stdout.flush()


def _optimizer(args: argparse.Namespace) -> OptimizerConfig:
    return OptimizerConfig.from_config({"seed": args.seed, "tol": args.tol, "starts": args.starts})


def _read_json(path: str, what: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path} is not valid JSON: {exc.msg}") from exc


def _require_converged(converged: bool) -> None:
    if not converged:
        raise OptimizerError("optimizer did not converge within max_iters; raise --starts or relax --tol")


def _position(args: argparse.Namespace) -> PositionedPair:
    ball_a, ball_b = load_body(args.body_a), load_body(args.body_b)
    if args.fixed_position:
        return positioned_by_identity(ball_a, ball_b)
    pair = canonical_position(ball_a, ball_b, _optimizer(args))
    _require_converged(pair.converged)
    return pair


def _grid(args: argparse.Namespace) -> List[float]:
    if args.grid and args.grid_list:
        raise InputError("pass either --grid or --grid-list, not both")
    if args.grid:
        return parse_grid_spec(args.grid)
    if args.grid_list:
        return parse_grid_list(args.grid_list)
    return uniform_grid(int(section("geodesic")["default_grid"]))


# ── commands ───────────────────────────────────────────────────────────────────

def cmd_dist(args: argparse.Namespace) -> int:
    ball_a, ball_b = load_body(args.body_a), load_body(args.body_b)
    if args.fixed_position:
        factor_in, factor_out = fixed_position_factors(ball_a, ball_b)
        report = DistanceReport.build(np.eye(ball_a.dim), factor_in, factor_out, 0, True)
    else:
        report = bm_distance(ball_a, ball_b, _optimizer(args))
    _emit(report.to_json_dict())
    if not report.converged:
        # the best-so-far report is still printed
        logger.warning("distance report did not converge")
        return OptimizerError.exit_code
    return SUCCESS


def cmd_geodesic(args: argparse.Namespace) -> int:
    grid = _grid(args)
    pair = _position(args)
    path = build_path(pair, args.kind, grid)
    check = geodesic_product_check(path, grid, args.tol)
    manifest = export_path(path, args.out)
    _emit({"manifest": manifest.model_dump(mode="json"), "product_check": check.model_dump()})
    return SUCCESS


def cmd_verify(args: argparse.Namespace) -> int:
    if args.partitions < 0:
        raise InputError(f"--partitions must be ≥ 0, got {args.partitions}")
    path = load_path(args.manifest)
    grid = path.lambdas
    rng = np.random.default_rng(args.seed if args.seed is not None else int(section("optimizer")["seed"]))
    # random partitions are random sub-grids of the sampled λ values
    partitions = [grid]
    interior = grid[1:-1]
    for _ in range(args.partitions):
        if not interior:
            partitions.append(grid)
            continue
        mask = rng.random(len(interior)) < 0.5
        partitions.append([0.0] + [lam for lam, keep in zip(interior, mask) if keep] + [1.0])
    checks = [geodesic_product_check(path, partition, args.tol) for partition in partitions]
    logger.info("verified %d partitions of %s", len(checks), args.manifest)
    _emit({
        "kind": path.kind.value,
        "d": path.d,
        "partitions": len(checks),
        "passed": True,
        "checks": [c.model_dump() for c in checks],
    })
    return SUCCESS


def cmd_invariant(args: argparse.Namespace) -> int:
    body = load_body(args.body)
    if args.map:
        matrix = _read_json(args.map, "map")
        check_matrix(matrix, body.dim)
        body = linear_image(body, matrix)
    invariant = area_ratios(body)
    _emit({"ratios": invariant.ratios, **edge_census(body)})
    return SUCCESS


def _face_specs(path: str) -> List[Dict[str, Any]]:
    raw = _read_json(path, "face")
    specs = raw if isinstance(raw, list) else [raw]
    if not specs or not all(isinstance(s, dict) for s in specs):
        raise InputError('a face file holds an object (or list of objects) with "points", "shape" or "sides"')
    return specs


def _face_points(spec: Dict[str, Any], pair: PositionedPair, lam: float, seed: int) -> np.ndarray:
    if "points" in spec:
        return np.asarray(spec["points"], dtype=float)
    if "shape" in spec:
        return place_face(pair, lam, np.asarray(spec["shape"], dtype=float), seed=seed)
    if "sides" in spec:
        return place_face(pair, lam, regular_face(int(spec["sides"]), float(spec.get("phase", 0.0))), seed=seed)
    raise InputError('face spec needs one of "points", "shape" or "sides"', {"keys": sorted(spec)})


def _require_distinct_censuses(censuses: List[tuple]) -> None:
    """Members sharing a facet census are not certified non-isometric."""
    collisions = [
        [i, j]
        for i in range(len(censuses))
        for j in range(i + 1, len(censuses))
        if censuses[i] == censuses[j]
    ]
    if collisions:
        raise VerificationError(
            "attached members share a facet census",
            {"collisions": collisions, "censuses": [list(c) for c in censuses]},
        )


def cmd_family(args: argparse.Namespace) -> int:
    pair = _position(args)
    seed = args.seed if args.seed is not None else int(section("optimizer")["seed"])
    out = Path(args.out) if args.out else None
    records: List[Dict[str, Any]] = []
    bodies: List[ConvexBody] = []

    if pair.dim == 3:
        if not args.attach_face:
            raise InputError("three-dimensional families need --attach-face")
        specs = _face_specs(args.attach_face)
        if args.count is not None and args.count != len(specs):
            raise InputError(
                "in three dimensions the family has one member per face spec",
                {"count": args.count, "faces": len(specs)},
            )
        for spec in specs:
            result = attach_face_3d(pair, args.lam, _face_points(spec, pair, args.lam, seed))
            bodies.append(result.body)
            records.append({
                "certificate": result.certificate.model_dump(by_alias=True),
                "face": result.face.tolist(),
            })
        censuses = [tuple(r["certificate"]["facet_census"]) for r in records]
        _require_distinct_censuses(censuses)
        summary: Dict[str, Any] = {"distinct_censuses": len(set(censuses))}
    elif pair.dim == 2:
        if args.attach_face:
            raise InputError("--attach-face applies to three-dimensional pairs only")
        count = args.count if args.count is not None else int(section("family")["default_count"])
        family = bq_family(pair, args.lam, count)
        pair = family.pair
        bodies = list(family)
        records = [{"certificate": c.model_dump(by_alias=True)} for c in family.certificates]
        summary = {"witness": family.witness.model_dump(by_alias=True)}
    else:
        raise InputError(f"families are built in dimension 2 or 3, got {pair.dim}")

    if out is not None:
        for k, (body, record) in enumerate(zip(bodies, records)):
            name = f"member_{k:03d}.json"
            write_json(out / name, dump_body(body))
            record["file"] = name
        write_json(out / "certificates.json", records)
    _emit({"lambda": args.lam, "d": pair.d, "count": len(bodies), **summary, "members": records})
    return SUCCESS


# ── parser ─────────────────────────────────────────────────────────────────────

def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="base seed (optimizer, partitions)")
    parser.add_argument("--tol", type=float, default=None, help="optimizer / verification tolerance")
    parser.add_argument("--starts", type=int, default=None, help="optimizer starts")


def _pair_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("body_a", help="body JSON file of E")
    parser.add_argument("body_b", help="body JSON file of F")
    parser.add_argument("--fixed-position", action="store_true",
                        help="skip the optimizer and position by the identity map")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmgeodesics",
        description="Banach–Mazur distances, extreme geodesics and intermediate-space families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", help="Banach–Mazur distance of two bodies")
    _pair_args(dist)
    _common(dist)
    dist.set_defaults(handler=cmd_dist)

    geodesic = sub.add_parser("geodesic", help="sample an extreme geodesic and export it")
    _pair_args(geodesic)
    _common(geodesic)
    geodesic.add_argument("--kind", choices=[PathKind.INTERSECTION.value, PathKind.HULL.value],
                          default=PathKind.INTERSECTION.value)
    geodesic.add_argument("--grid", help="λ grid as a:b:step")
    geodesic.add_argument("--grid-list", help="λ grid as comma-separated values")
    geodesic.add_argument("--out", required=True, help="export directory")
    geodesic.set_defaults(handler=cmd_geodesic)

    verify = sub.add_parser("verify", help="check the product law on an exported path")
    verify.add_argument("manifest", help="manifest.json or its directory")
    verify.add_argument("--partitions", type=int, default=0, help="random sub-partitions on top of the full grid")
    _common(verify)
    verify.set_defaults(handler=cmd_verify)

    invariant = sub.add_parser("invariant", help="triangle-area-ratio invariant of a polygon")
    invariant.add_argument("body", help="polygon body JSON file")
    invariant.add_argument("--map", help="JSON matrix applied to the body first")
    invariant.set_defaults(handler=cmd_invariant)

    family = sub.add_parser("family", help="certified family of non-isometric intermediate bodies")
    _pair_args(family)
    _common(family)
    family.add_argument("--lambda", dest="lam", type=float, default=0.5)
    family.add_argument("--count", type=int, default=None,
                        help="members to build (2D); in 3D it must match the number of face specs")
    family.add_argument("--out", help="directory for member bodies and certificates")
    family.add_argument("--attach-face", help="face spec JSON (3D pairs)")
    family.set_defaults(handler=cmd_family)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except BMGeodesicError as exc:
        logger.error("%s: %s", type(exc).__name__, exc.message)
        _emit(exc.to_dict())
        return exc.exit_code
