"""
Error taxonomy shared by the library, the CLI and the service.

Each exception carries the process exit code the CLI maps it to:

    0  success
    2  InputError            malformed input, violated precondition
    3  VerificationError     a geometric identity failed to verify
       ConstructionError     a certified construction could not be completed
       SearchError           a numeric witness search found nothing
    4  OptimizerError        optimizer did not converge (CLI only)
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class BMGeodesicError(Exception):
    """Base class; ``details`` ends up in the CLI / service error payload."""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.details}


class InputError(BMGeodesicError, ValueError):
    exit_code = 2


class VerificationError(BMGeodesicError):
    exit_code = 3


class ConstructionError(BMGeodesicError):
    exit_code = 3


class SearchError(BMGeodesicError):
    exit_code = 3


class OptimizerError(BMGeodesicError):
    exit_code = 4
