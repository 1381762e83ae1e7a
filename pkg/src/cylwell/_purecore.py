"""Scalar numerical kernels, pure-Python backend.

A compiled twin of this module lives in _fastcore.pyx; the two must keep
identical algorithms and operation order so results agree to the last bits.
Arguments are validated by the callers (specfun / oracle.fdsolver), not here.
"""

import math

BACKEND_NAME = "python"

# Euler-Mascheroni constant (the high-precision oracle recomputes its own)
_GAMMA = 0.5772156649015329

# pi split into a double-double pair for phase reduction in the
# large-argument J branch
_PI_HI = 3.141592653589793
_PI_LO = 1.2246467991473532e-16

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split constant


def _two_prod(a, b):
    # exact product: returns (p, err) with p + err == a*b
    p = a * b
    c = _SPLITTER * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLITTER * b
    bhi = c - (c - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _hankel_j(n, x):
    # Large-argument expansion; caller guarantees x >= 300 and x >= (n+2)^2.
    mu = 4.0 * n * n
    ex = 8.0 * x
    c = 1.0
    p = 1.0
    q = 0.0
    sign = 1.0
    j = 1
    while j <= 40:
        c = c * (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (j * ex)
        if j % 2 == 1:
            q += sign * c
        else:
            sign = -sign
            p += sign * c
        if abs(c) < 1e-17 * (abs(p) + abs(q)):
            break
        j += 1
    # chi = (2n+1)*pi/4 in double-double, theta = x - chi
    f = (2 * n + 1) * 0.25
    chi_hi, chi_lo = _two_prod(f, _PI_HI)
    chi_lo += f * _PI_LO
    th = x - chi_hi
    # x - chi_hi is exact when magnitudes are close; recover the residue
    tl = (x - th - chi_hi) - chi_lo
    s = math.sin(th)
    cth = math.cos(th)
    cosv = cth - s * tl
    sinv = s + cth * tl
    return math.sqrt(2.0 / (_PI_HI * x)) * (p * cosv - q * sinv)


def _miller_two(n, x):
    # Downward recurrence normalized by J_0 + 2*sum J_2k = 1.
    # Returns (J_n, J_{n+1}).  Power-of-two rescaling keeps values in range.
    base = n + 1
    xc = int(math.ceil(x))
    if xc > base:
        base = xc
    nstart = base + 40 + int(14.0 * math.pow(base, 1.0 / 3.0))
    fp = 0.0           # f_{k+1}
    fc = 1.0e-30       # f_k, arbitrary seed, scaled out by the normalization
    jn = 0.0
    jn1 = 0.0
    total = 0.0        # Neumaier-compensated sum of the normalization series
    comp = 0.0
    two_over_x = 2.0 / x
    k = nstart
    while k >= 0:
        if k == n:
            jn = fc
        elif k == n + 1:
            jn1 = fc
        if k % 2 == 0:
            t = fc if k == 0 else 2.0 * fc
            s = total + t
            if abs(total) >= abs(t):
                comp += (total - s) + t
            else:
                comp += (t - s) + total
            total = s
        if k > 0:
            fn = k * two_over_x * fc - fp
            fp = fc
            fc = fn
            if abs(fc) > 1e250:
                sc = 2.0 ** -832
                fc *= sc
                fp *= sc
                total *= sc
                comp *= sc
                jn *= sc
                jn1 *= sc
        k -= 1
    norm = total + comp
    return jn / norm, jn1 / norm


def bessel_j_two(n, x):
    """(J_n(x), J_{n+1}(x)) for integer n >= 0, x >= 0."""
    if x == 0.0:
        return (1.0, 0.0) if n == 0 else (0.0, 0.0)
    if x >= 300.0 and x >= (n + 2) * (n + 2):
        return _hankel_j(n, x), _hankel_j(n + 1, x)
    return _miller_two(n, x)


def bessel_j_one(n, x):
    """J_n(x)."""
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x >= 300.0 and x >= (n + 1) * (n + 1):
        return _hankel_j(n, x)
    return _miller_two(n, x)[0]


def _k01_series_scaled(x):
    # e^x K_0, e^x K_1 for 0 < x <= 2 via the ascending log series.
    q = 0.25 * x * x
    lg = math.log(0.5 * x)
    # I_0, I_1 and the companion psi-sums, accumulated together
    t0 = 1.0
    i0 = 1.0
    s0 = 0.0            # sum q^k H_k / (k!)^2, k >= 1
    t1 = 1.0
    i1 = 1.0            # series for I_1/(x/2)
    s1 = 2.0 * _GAMMA - 1.0   # sum (2 gamma - H_k - H_{k+1}) q^k / (k! (k+1)!)
    hk = 0.0
    k = 1
    while k <= 30:
        hk += 1.0 / k
        t0 = t0 * q / (k * k)
        i0 += t0
        s0 += t0 * hk
        t1 = t1 * q / (k * (k + 1))
        i1 += t1
        s1 += t1 * (2.0 * _GAMMA - 2.0 * hk - 1.0 / (k + 1))
        if t0 < 1e-18 * i0:
            break
        k += 1
    k0 = -(lg + _GAMMA) * i0 + s0
    k1 = 1.0 / x + lg * (0.5 * x) * i1 + 0.25 * x * s1
    ex = math.exp(x)
    return k0 * ex, k1 * ex


def _k01_cf2_scaled(x):
    # e^x K_0, e^x K_1 for x > 2 via Steed's continued fraction.
    a = -0.25
    b = 2.0 + 2.0 * x
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    c = 0.25
    q = c
    s = 1.0 + q * delh
    i = 1
    while i <= 40000:
        a -= 2.0 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels) < 1e-17 * abs(s):
            break
        i += 1
    else:
        raise ArithmeticError("K continued fraction did not converge")
    h = 0.25 * h
    k0 = math.sqrt(_PI_HI / (2.0 * x)) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def bessel_k_scaled_two(n, x):
    """(e^x K_n(x), e^x K_{n+1}(x)) for integer n >= 0, x > 0.

    Raises ArithmeticError on overflow (huge order at tiny argument).
    """
    if x <= 2.0:
        kp, kc = _k01_series_scaled(x)
    else:
        kp, kc = _k01_cf2_scaled(x)
    if n == 0:
        return kp, kc
    two_over_x = 2.0 / x
    j = 1
    while j <= n:
        knext = kp + j * two_over_x * kc
        if knext > 1e305:
            raise ArithmeticError(
                f"K_{j + 1}({x!r}) overflows double precision")
        kp = kc
        kc = knext
        j += 1
    return kp, kc


def sturm_count(diag, off2, lam):
    """Number of eigenvalues < lam of the symmetric tridiagonal matrix with
    diagonal `diag` and squared off-diagonals `off2` (off2[i] couples rows
    i and i+1)."""
    pivmin = 1e-290
    q = diag[0] - lam
    cnt = 1 if q < 0.0 else 0
    if -pivmin < q < pivmin:
        q = -pivmin
    n = len(diag)
    i = 1
    while i < n:
        q = diag[i] - lam - off2[i - 1] / q
        if q < 0.0:
            cnt += 1
        if -pivmin < q < pivmin:
            q = -pivmin
        i += 1
    return cnt
