"""Logging wrapper for bmgeodesics.

Records go to stderr: stdout is reserved for the JSON the CLI prints.
"""

import logging
import os
import sys
from typing import Optional

_LEVEL_ENV = "BMG_LOG_LEVEL"


def _default_level() -> int:
    """Level from ``BMG_LOG_LEVEL`` (name or number), else config.yaml's ``logging.level``."""
    raw = os.getenv(_LEVEL_ENV, "").strip()
    if not raw:
        from src.utils.config import section

        raw = str(section("logging").get("level", "INFO"))
    if raw.isdigit():
        return int(raw)
    level = logging.getLevelName(raw.upper())
    return level if isinstance(level, int) else logging.INFO


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """
    Return a configured logger with the given name.

    Logging format:  [LEVEL]  logger_name — message

    Parameters
    ----------
    name : str
        Typically __name__ of the calling module.
    level : int | None
        Logging level; defaults to ``BMG_LOG_LEVEL`` or INFO.

    Returns
    -------
    logging.Logger
    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(
            fmt="%(asctime)s  [%(levelname)s]  %(name)s — %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    logger.setLevel(level if level is not None else _default_level())
    return logger
