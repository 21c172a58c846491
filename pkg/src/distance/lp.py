"""Closed-form distances between ℓ_p spaces of equal dimension."""

from __future__ import annotations

from src.bodies.gauge import P_INF
from src.bodies.ops import normalize_exponent
from src.core.errors import InputError


def reciprocal_exponent(p) -> float:
    """1/p, with 1/∞ = 0."""
    return 0.0 if p == P_INF else 1.0 / p


def _side_of_two(p) -> int:
    if p == P_INF or p > 2:
        return 1
    return -1 if p < 2 else 0


def known_lp_distance(r, s, n: int) -> float:
    """
    d(ℓ_r^n, ℓ_s^n) = n^{|1/r − 1/s|} for exponents on the same side of 2.

    Exponents straddling 2 are rejected: there the formula only bounds the
    distance from above.
    """
    r, s = normalize_exponent(r), normalize_exponent(s)
    if int(n) != n or n < 1:
        raise InputError(f"dimension must be a positive integer, got {n!r}")
    if _side_of_two(r) * _side_of_two(s) < 0:
        raise InputError(
            "exponents on opposite sides of 2 are not supported",
            {"r": r, "s": s},
        )
    return float(n) ** abs(reciprocal_exponent(r) - reciprocal_exponent(s))
