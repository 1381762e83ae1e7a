"""Extended-precision Bessel reference values (>= 30 significant digits).

All evaluation is carried in the in-repo fixed-point integer arithmetic of
`xprec` (48-decimal resolution); results come back as exact Fractions of the
internal integers.  The series/quadrature methods here share nothing with the
double-precision production kernels, so the two paths are independent.

J_n: exact-prefactor ascending power series.
K_n: ascending log-series for x <= 2 and a trapezoidal evaluation of the
     integral representation e^x K_n(x) = int_0^inf e^{-x(cosh t - 1)}
     cosh(nt) dt above, then exact upward recurrence in the order.
I_n: ascending power series (used for Wronskian self-checks).
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import xprec as xp

_FOUR = Fraction(4)


def _series_guard_digits(n: int, x: float) -> int:
    # ln of the largest term of the reduced series sum_k (x^2/4)^k n!/(k!(n+k)!),
    # which peaks at k* = (sqrt(n^2 + x^2) - n)/2; the alternating J series
    # cancels down from that magnitude, so carry as many extra digits
    kstar = max(0.0, 0.5 * (math.sqrt(n * n + x * x) - n))
    if kstar < 1.0:
        return 0
    ln_max = (2.0 * kstar * math.log(0.5 * x) - math.lgamma(kstar + 1.0)
              - math.lgamma(n + kstar + 1.0) + math.lgamma(n + 1.0))
    return max(0, int(ln_max / math.log(10.0)) + 8)


def _series_sum(n: int, x: float, signed: bool) -> tuple[Fraction, int, int]:
    """Prefactor (x/2)^n/n! as an exact Fraction, plus the value and scale of
    sum_k (+-1)^k (x^2/4)^k n!/(k! (n+k)!) in local fixed-point integers."""
    xf = Fraction(x)
    q = xf * xf / _FOUR
    pref = (xf / 2) ** n / Fraction(math.factorial(n))
    guard = _series_guard_digits(n, x) if signed else 0
    for _ in range(4):
        scale = 10 ** (xp.DIGITS + guard)
        q_fp = xp.idiv_round(q.numerator * scale, q.denominator)
        t = scale
        total = t
        k = 1
        while k < 200000:
            t = xp.idiv_round(xp.idiv_round(t * q_fp, scale), k * (n + k))
            if signed:
                t = -t
            total += t
            if abs(t) < 10 and k * k > 4 * abs(q):
                break
            k += 1
        # the alternating sum must keep >= ~40 significant digits above the
        # accumulated unit rounding of ~k operations; widen and retry if not
        if not signed or total == 0 or abs(total) >= k * 10 ** 40:
            if total != 0:
                return pref, total, scale
        guard += max(45, guard // 2 + 45)
    raise ArithmeticError(
        f"series significance not reached for n={n}, x={x!r}")


def bessel_j(n: int, x: float) -> Fraction:
    """J_n(x) for integer n >= 0, x >= 0, reference precision."""
    if x == 0.0:
        return Fraction(1 if n == 0 else 0)
    pref, total, scale = _series_sum(n, x, signed=True)
    return pref * Fraction(total, scale)


def bessel_i(n: int, x: float) -> Fraction:
    """I_n(x) for integer n >= 0, x >= 0, reference precision."""
    if x == 0.0:
        return Fraction(1 if n == 0 else 0)
    pref, total, scale = _series_sum(n, x, signed=False)
    return pref * Fraction(total, scale)


def bessel_j_prime(n: int, x: float) -> Fraction:
    """dJ_n/dx at reference precision."""
    if n == 0:
        return -bessel_j(1, x)
    return bessel_j(n - 1, x) - Fraction(n) / Fraction(x) * bessel_j(n, x)


def _k01_series_scaled(x: float) -> tuple[int, int]:
    # (e^x K_0, e^x K_1) fixed point, ascending log series; sensible for x <= 2
    xf = Fraction(x)
    q_fp = xp.from_fraction(xf * xf / _FOUR)
    half_x = xp.from_fraction(xf / 2)
    lg = xp.ln(half_x)
    gamma = xp.euler_gamma()
    t0 = xp.ONE
    i0 = xp.ONE
    s0 = 0
    t1 = xp.ONE
    i1 = xp.ONE
    s1 = 2 * gamma - xp.ONE
    h = 0
    k = 1
    while True:
        h += xp.idiv_round(xp.SCALE, k)
        t0 = xp.idiv_round(xp.mul(t0, q_fp), k * k)
        i0 += t0
        s0 += xp.mul(t0, h)
        t1 = xp.idiv_round(xp.mul(t1, q_fp), k * (k + 1))
        i1 += t1
        s1 += xp.mul(t1, 2 * gamma - 2 * h - xp.idiv_round(xp.SCALE, k + 1))
        if t0 == 0 and t1 == 0:
            break
        k += 1
    k0 = -xp.mul(lg + gamma, i0) + s0
    k1 = (xp.div(xp.ONE, xp.from_fraction(xf))
          + xp.mul(xp.mul(lg, half_x), i1)
          + xp.mul(xp.idiv_round(half_x, 2), s1))
    e = xp.exp(xp.from_fraction(xf))
    return xp.mul(k0, e), xp.mul(k1, e)


_COSH_CACHE: dict[tuple[int, int], int] = {}
_H0 = Fraction(3, 40)  # base trapezoid step 0.075


def _trapezoid_nodes(x: float):
    # step refinement: h <= min(0.075, 0.44/sqrt(x)) keeps the quadrature
    # error of the analytic integrand below ~1e-44
    level = 0
    while float(_H0) / (1 << level) > 0.44 / math.sqrt(x):
        level += 1
    h_fp = xp.from_fraction(_H0 / (1 << level))
    return level, h_fp


def _k01_trapezoid_scaled(x: float) -> tuple[int, int]:
    # (e^x K_0, e^x K_1) fixed point via the cosh integral representation
    level, h_fp = _trapezoid_nodes(x)
    x_fp = xp.from_float(x)
    s0 = xp.HALF  # j = 0 node: weight 1/2, integrand 1 (both orders)
    s1 = xp.HALF
    j = 1
    while True:
        key = (level, j)
        c = _COSH_CACHE.get(key)
        if c is None:
            c = xp.cosh(h_fp * j)
            _COSH_CACHE[key] = c
        arg = xp.mul(x_fp, c - xp.ONE)
        if arg > 130 * xp.SCALE:
            break
        w = xp.exp(-arg)
        s0 += w
        s1 += xp.mul(w, c)
        j += 1
    return xp.mul(h_fp, s0), xp.mul(h_fp, s1)


def _k_scaled_fp(n: int, x: float) -> int:
    if x <= 2.0:
        kp, kc = _k01_series_scaled(x)
    else:
        kp, kc = _k01_trapezoid_scaled(x)
    if n == 0:
        return kp
    x_fp = xp.from_float(x)
    for j in range(1, n):
        kp, kc = kc, kp + xp.mul(xp.div(2 * j * xp.SCALE, x_fp), kc)
    return kc


def bessel_k_scaled(n: int, x: float) -> Fraction:
    """e^x K_n(x) for integer n >= 0, x > 0, reference precision."""
    return Fraction(_k_scaled_fp(n, x), xp.SCALE)


def bessel_k(n: int, x: float) -> Fraction:
    """K_n(x) for integer n >= 0, x > 0, reference precision."""
    scaled = _k_scaled_fp(n, x)
    return Fraction(scaled, xp.exp(xp.from_float(x)))


def wronskian_residual(n: int, x: float) -> Fraction:
    """|x*(I_n K_{n+1} + I_{n+1} K_n) - 1|, a cross-method self check."""
    e = xp.exp(xp.from_float(x))
    i_n = xp.div(xp.from_fraction(bessel_i(n, x)), e)
    i_n1 = xp.div(xp.from_fraction(bessel_i(n + 1, x)), e)
    k_n = _k_scaled_fp(n, x)
    k_n1 = _k_scaled_fp(n + 1, x)
    w = xp.mul(i_n, k_n1) + xp.mul(i_n1, k_n)
    return abs(Fraction(x) * Fraction(w, xp.SCALE) - 1)


def _bisect_sign_change(f, lo: Fraction, hi: Fraction) -> Fraction:
    flo = f(lo)
    for _ in range(170):
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < Fraction(1, 10 ** 40):
            break
    return (lo + hi) / 2


def _kth_sign_change(f, start: Fraction, step: Fraction, k: int) -> Fraction:
    prev = f(start)
    t = start
    found = 0
    for _ in range(100000):
        t2 = t + step
        cur = f(t2)
        if (cur < 0) != (prev < 0):
            found += 1
            if found == k:
                return _bisect_sign_change(f, t, t2)
        t, prev = t2, cur
    raise RuntimeError("sign change not found")


def bessel_j_zero(m: int, k: int) -> Fraction:
    """k-th positive zero of J_m, located by sign bisection on the series."""
    f = lambda t: bessel_j(m, float(t))
    return _kth_sign_change(f, Fraction(1, 100), Fraction(1, 2), k)


def bessel_j_prime_zero(m: int, k: int) -> Fraction:
    """k-th positive zero of J'_m (m >= 1), by sign bisection."""
    f = lambda t: bessel_j_prime(m, float(t))
    return _kth_sign_change(f, Fraction(1, 100), Fraction(1, 2), k)
