"""
Path export: one body JSON per λ, a manifest, and SVG snapshots in 2D.

Layout of an export directory:

    manifest.json              {"kind", "d", "lambdas", "files", "ball_E", "ball_F"}
    body_0.000000.json         body JSON (see src.bodies.codec)
    body_0.000000.svg          2D only
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Union

import numpy as np

from src.bodies import ConvexBody, Polygon2, circle_directions, dump_body, load_body, parse_body
from src.core.errors import InputError
from src.core.protocol import PathKind, PathManifest
from src.distance import PositionedPair
from src.utils.logging import get_logger
from src.utils.serialize import write_atomic, write_json

from .paths import GeodesicPath, b_lambda, c_lambda

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.json"
SVG_SIZE = 480
OUTLINE_SAMPLES = 256


def body_filename(lam: float, suffix: str = "json") -> str:
    return f"body_{lam:.6f}.{suffix}"


def _outline(body: ConvexBody) -> np.ndarray:
    if isinstance(body, Polygon2):
        return body.vertices_float
    return body.boundary_points(circle_directions(OUTLINE_SAMPLES))


def _path_data(points: np.ndarray) -> str:
    head, *rest = points
    parts = [f"M {head[0]:.9g},{head[1]:.9g}"] + [f"L {x:.9g},{y:.9g}" for x, y in rest]
    return " ".join(parts) + " Z"


def render_svg(body: ConvexBody, pair: PositionedPair, lam: float) -> str:
    """SVG 1.1 snapshot on [−(d+0.1), d+0.1]² with B_E and B_F outlined."""
    if body.dim != 2:
        raise InputError("SVG snapshots are only drawn for 2D bodies")
    half = pair.d + 0.1
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(SVG_SIZE),
            "height": str(SVG_SIZE),
            "viewBox": f"{-half:.9g} {-half:.9g} {2 * half:.9g} {2 * half:.9g}",
        },
    )
    ET.SubElement(root, "title").text = f"lambda = {lam:.6f}, d = {pair.d:.9g}"
    # flip y so the picture uses mathematical orientation
    group = ET.SubElement(root, "g", {"transform": "scale(1,-1)"})
    stroke = f"{half / 200:.6g}"
    ET.SubElement(group, "path", {
        "d": _path_data(_outline(body)), "fill": "#4a7fb5", "fill-opacity": "0.45",
        "stroke": "#1f3f5f", "stroke-width": stroke,
    })
    ET.SubElement(group, "path", {
        "d": _path_data(_outline(pair.ball_E)), "fill": "none",
        "stroke": "#c0392b", "stroke-width": stroke,
    })
    ET.SubElement(group, "path", {
        "d": _path_data(_outline(pair.ball_F)), "fill": "none",
        "stroke": "#27ae60", "stroke-width": stroke, "stroke-dasharray": f"{4 * float(stroke):.6g}",
    })
    return ET.tostring(root, encoding="unicode")


def export_path(path: GeodesicPath, out_dir: Union[str, Path], svg: bool = True) -> PathManifest:
    out = Path(out_dir)
    files = []
    for lam, body in path.samples:
        name = body_filename(lam)
        write_json(out / name, dump_body(body))
        files.append(name)
        if svg and body.dim == 2:
            write_atomic(out / body_filename(lam, "svg"), render_svg(body, path.pair, lam))
    manifest = PathManifest(
        kind=path.kind,
        d=path.d,
        lambdas=path.lambdas,
        files=files,
        ball_E=dump_body(path.pair.ball_E),
        ball_F=dump_body(path.pair.ball_F),
    )
    write_json(out / MANIFEST_NAME, manifest.model_dump(mode="json"))
    logger.info("exported %d samples to %s", len(files), out)
    return manifest


def load_path(manifest_path: Union[str, Path]) -> GeodesicPath:
    """Rebuild a sampled path from an export directory (or its manifest file)."""
    manifest_path = Path(manifest_path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / MANIFEST_NAME
    try:
        manifest = PathManifest.model_validate(json.loads(manifest_path.read_text()))
    except OSError as exc:
        raise InputError(f"cannot read manifest {manifest_path}: {exc.strerror}") from exc
    except (json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"malformed manifest {manifest_path}: {exc}") from exc
    if len(manifest.files) != len(manifest.lambdas):
        raise InputError("manifest lists a different number of files and λ values")

    pair = PositionedPair(parse_body(manifest.ball_E), parse_body(manifest.ball_F), manifest.d)
    samples = [
        (lam, load_body(manifest_path.parent / name))
        for lam, name in zip(manifest.lambdas, manifest.files)
    ]
    if manifest.kind is PathKind.INTERSECTION:
        builder = lambda lam: b_lambda(pair, lam)  # noqa: E731
    elif manifest.kind is PathKind.HULL:
        builder = lambda lam: c_lambda(pair, lam)  # noqa: E731
    else:
        def builder(lam: float) -> ConvexBody:
            raise InputError(f"λ={lam} is not sampled in this {manifest.kind.value} export")
    return GeodesicPath(pair=pair, kind=manifest.kind, samples=samples, builder=builder)
