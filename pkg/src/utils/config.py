"""Project configuration: config.yaml merged over built-in defaults."""

from __future__ import annotations

import copy
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

load_dotenv()

# Resolve config.yaml from project root (two levels up from src/utils/)
_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.yaml"

DEFAULTS: Dict[str, Any] = {
    "optimizer": {"starts": 32, "max_iters": 2000, "tol": 1e-6, "seed": 0},
    "tolerances": {
        "inclusion": 1e-9,
        "identity": 1e-6,
        "collinear": 1e-9,
        "ratio": 1e-9,
        "distinct": 1e-7,
    },
    "search": {"angular_samples": 4096, "sphere_starts": 64, "contact_samples": 8192},
    "geodesic": {"default_grid": 11},
    "family": {"polygon_sides": 64, "ratio_gap": 1e-3, "default_count": 10},
    "server": {"host": "0.0.0.0", "port": 8000},
    "logging": {"level": "INFO"},
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _config_path() -> Path:
    override = os.getenv("BMG_CONFIG", "").strip()
    return Path(override) if override else _CONFIG_PATH


def _load_config() -> dict:
    """Load the project-level config.yaml and return it as a dict (empty dict if missing)."""
    path = _config_path()
    if path.exists():
        with open(path, "r") as f:
            return yaml.safe_load(f) or {}
    return {}


@lru_cache(maxsize=1)
def load_config() -> Dict[str, Any]:
    """Return the merged configuration (cached for the process lifetime)."""
    return _merge(DEFAULTS, _load_config())


def section(name: str) -> Dict[str, Any]:
    """Shortcut for ``load_config()[name]`` (empty dict for unknown sections)."""
    return dict(load_config().get(name, {}))
