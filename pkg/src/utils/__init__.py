"""Utilities package."""

from .logging import get_logger
from .config import load_config
from .serialize import dumps, write_json

__all__ = ["get_logger", "load_config", "dumps", "write_json"]
