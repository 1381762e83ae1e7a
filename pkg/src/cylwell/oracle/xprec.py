"""Fixed-point multi-limb arithmetic on Python integers.

Numbers are plain ints denoting value * 10**-DIGITS.  Absolute resolution is
10**-DIGITS; large magnitudes keep full integer precision, so the relative
error of every operation is at most one unit in the last place of the
resolution.  This is the only arithmetic the extended-precision reference
functions use -- nothing here depends on the float tower.
"""

from __future__ import annotations

import math
from fractions import Fraction

DIGITS = 48
SCALE = 10 ** DIGITS
ONE = SCALE
HALF = SCALE // 2


def idiv_round(p: int, q: int) -> int:
    """Nearest-int division p/q for q > 0 (half rounds toward +inf)."""
    return (2 * p + q) // (2 * q)


def from_fraction(fr: Fraction) -> int:
    return idiv_round(fr.numerator * SCALE, fr.denominator) \
        if fr.denominator > 0 else idiv_round(-fr.numerator * SCALE,
                                              -fr.denominator)


def from_float(x: float) -> int:
    return from_fraction(Fraction(x))


def from_int(n: int) -> int:
    return n * SCALE


def to_fraction(a: int) -> Fraction:
    return Fraction(a, SCALE)


def to_float(a: int) -> float:
    return a / SCALE if abs(a) < 10 ** 300 else float(Fraction(a, SCALE))


def mul(a: int, b: int) -> int:
    p = a * b
    return idiv_round(p, SCALE)


def div(a: int, b: int) -> int:
    if b < 0:
        a, b = -a, -b
    return idiv_round(a * SCALE, b)


def inv(a: int) -> int:
    return div(ONE, a)


def sqrt(a: int) -> int:
    if a < 0:
        raise ValueError("sqrt of negative fixed-point value")
    return math.isqrt(a * SCALE)


def exp(a: int) -> int:
    """exp of a fixed-point value; tiny results may floor to 0."""
    if a == 0:
        return ONE
    if a < 0:
        e = exp(-a)
        return div(ONE, e) if e > 0 else 0
    # halve until the series argument is <= 1/8
    s = 0
    limit = SCALE // 8
    r = a
    while r > limit:
        s += 1
        r = idiv_round(a, 1 << s)
    total = ONE + r
    t = r
    k = 2
    while t != 0 and k < 80:
        t = idiv_round(mul(t, r), k)
        total += t
        k += 1
    for _ in range(s):
        total = mul(total, total)
    return total


def _atan_inv(m: int) -> int:
    # arctan(1/m) for integer m >= 2
    total = 0
    j = 0
    mm = m * m
    power = m  # m^(2j+1)
    while True:
        term = idiv_round(SCALE, (2 * j + 1) * power)
        if term == 0:
            break
        total += -term if j % 2 else term
        power *= mm
        j += 1
    return total


def _atanh(z: int) -> int:
    # arctanh(z) for |z| < 0.5 fixed point
    total = z
    t = z
    zz = mul(z, z)
    j = 1
    while True:
        t = mul(t, zz)
        term = idiv_round(t, 2 * j + 1)
        if term == 0:
            break
        total += term
        j += 1
    return total


_CACHE: dict[str, int] = {}


def pi() -> int:
    if "pi" not in _CACHE:
        _CACHE["pi"] = 16 * _atan_inv(5) - 4 * _atan_inv(239)
    return _CACHE["pi"]


def ln2() -> int:
    if "ln2" not in _CACHE:
        _CACHE["ln2"] = 2 * _atanh(div(ONE, 3 * SCALE))
    return _CACHE["ln2"]


def ln(a: int) -> int:
    """Natural log of a positive fixed-point value."""
    if a <= 0:
        raise ValueError("ln of non-positive fixed-point value")
    k = a.bit_length() - ONE.bit_length()
    # bring the mantissa into [0.75, 1.5]
    m = idiv_round(a, 1 << k) if k >= 0 else a * (1 << -k)
    if m < (3 * SCALE) // 4:
        m *= 2
        k -= 1
    z = div(m - ONE, m + ONE)
    return 2 * _atanh(z) + k * ln2()


def euler_gamma() -> int:
    """Euler-Mascheroni constant via the Brent-McMillan AGM-free sums."""
    if "gamma" in _CACHE:
        return _CACHE["gamma"]
    n = 30  # error O(e^{-4n}) ~ 1e-52
    nn = n * n * SCALE
    t = ONE
    a_sum = 0
    b_sum = ONE
    h = 0  # harmonic number H_k
    k = 1
    while True:
        t = idiv_round(mul(t, nn), k * k)
        if t == 0:
            break
        h += idiv_round(SCALE, k)
        a_sum += mul(t, h)
        b_sum += t
        k += 1
    _CACHE["gamma"] = div(a_sum, b_sum) - ln(from_int(n))
    return _CACHE["gamma"]


def cosh(a: int) -> int:
    e = exp(a)
    return idiv_round(e + div(ONE, e), 2)
