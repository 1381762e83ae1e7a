"""Cylindrical Bessel functions J_n and modified Bessel functions K_n.

Integer orders 0..60, real arguments up to 1e4.  J_n uses a normalized
downward recurrence (Miller's algorithm) with a large-argument asymptotic
branch; K_n uses ascending-series kernels for x <= 2, a continued fraction
above, and stable upward recurrence in the order.  Requests outside the
certified domain are rejected, never extrapolated.

Derivatives are the identities J'_0 = -J_1, K'_0 = -K_1 and, for n >= 1,
J'_n = J_{n-1} - (n/x) J_n and K'_n = -K_{n-1} - (n/x) K_n.
"""

from __future__ import annotations

import math

from ._backend import (BACKEND, backend_name, available_backends,  # noqa: F401
                       bessel_j_one, bessel_j_two, bessel_k_scaled_two)
from .errors import BesselOverflow, BesselUnderflow, DomainError

MAX_ORDER = 60
MAX_ARGUMENT = 1.0e4

_MIN_NORMAL = 2.2250738585072014e-308


def _check_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"order must be an integer, got {n!r}")
    if n < 0 or n > MAX_ORDER:
        raise DomainError(f"order {n} outside certified range 0..{MAX_ORDER}")
    return n


def _check_argument(x, positive: bool) -> float:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"argument must be finite, got {x!r}")
    if positive:
        if x <= 0.0:
            raise DomainError(f"argument must be > 0, got {x!r}")
    elif x < 0.0:
        raise DomainError(f"argument must be >= 0, got {x!r}")
    if x > MAX_ARGUMENT:
        raise DomainError(
            f"argument {x!r} outside certified range (max {MAX_ARGUMENT})")
    return x


def bessel_j(n: int, x: float) -> float:
    """J_n(x), relative accuracy ~1e-13 (absolute near zeros of J_n)."""
    n = _check_order(n)
    x = _check_argument(x, positive=False)
    return bessel_j_one(n, x)


def bessel_k_scaled(n: int, x: float) -> float:
    """e^x K_n(x); avoids the exponential tail underflow of K itself."""
    n = _check_order(n)
    x = _check_argument(x, positive=True)
    try:
        return bessel_k_scaled_two(n, x)[0] if n == 0 else \
            bessel_k_scaled_two(n - 1, x)[1]
    except ArithmeticError as exc:
        raise BesselOverflow(str(exc)) from None


def bessel_k(n: int, x: float) -> float:
    """K_n(x); strictly positive on x > 0.

    Raises BesselUnderflow when the true value drops below the smallest
    normal double -- evaluate bessel_k_scaled instead in that regime.
    """
    scaled = bessel_k_scaled(n, x)
    value = scaled * math.exp(-x)
    if value < _MIN_NORMAL:
        raise BesselUnderflow(
            f"K_{n}({x!r}) underflows double precision; "
            "use bessel_k_scaled(n, x) = exp(x)*K_n(x)")
    return value


def bessel_j_prime(n: int, x: float) -> float:
    """dJ_n/dx via J'_0 = -J_1 and J'_n = J_{n-1} - (n/x) J_n."""
    n = _check_order(n)
    if n == 0:
        return -bessel_j(1, x)
    x = _check_argument(x, positive=False)
    if x == 0.0:
        raise DomainError("bessel_j_prime requires x > 0 for n >= 1")
    return bessel_j(n - 1, x) - (n / x) * bessel_j(n, x)


def bessel_k_prime(n: int, x: float) -> float:
    """dK_n/dx via K'_0 = -K_1 and K'_n = -K_{n-1} - (n/x) K_n."""
    n = _check_order(n)
    if n == 0:
        return -bessel_k(1, x)
    return -bessel_k(n - 1, x) - (n / x) * bessel_k(n, x)
