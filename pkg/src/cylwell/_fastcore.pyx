# cython: boundscheck=False, wraparound=False, cdivision=True
"""Scalar numerical kernels, compiled backend.

Twin of _purecore.py -- keep algorithms and operation order in sync.
Compiled with -ffp-contract=off so both backends agree bit-for-bit.
"""

from libc.math cimport sin, cos, exp, log, sqrt, ceil, fabs, pow

BACKEND_NAME = "compiled"

cdef double _GAMMA = 0.5772156649015329
cdef double _PI_HI = 3.141592653589793
cdef double _PI_LO = 1.2246467991473532e-16
cdef double _SPLITTER = 134217729.0


cdef inline double _hankel_j(long n, double x):
    cdef double mu = 4.0 * n * n
    cdef double ex = 8.0 * x
    cdef double c = 1.0
    cdef double p = 1.0
    cdef double q = 0.0
    cdef double sign = 1.0
    cdef long j = 1
    cdef double f, chi_hi, chi_lo, prod, splt, ahi, alo, bhi, blo
    cdef double th, tl, s, cth, cosv, sinv
    while j <= 40:
        c = c * (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (j * ex)
        if j % 2 == 1:
            q += sign * c
        else:
            sign = -sign
            p += sign * c
        if fabs(c) < 1e-17 * (fabs(p) + fabs(q)):
            break
        j += 1
    f = (2 * n + 1) * 0.25
    prod = f * _PI_HI
    splt = _SPLITTER * f
    ahi = splt - (splt - f)
    alo = f - ahi
    splt = _SPLITTER * _PI_HI
    bhi = splt - (splt - _PI_HI)
    blo = _PI_HI - bhi
    chi_hi = prod
    chi_lo = ((ahi * bhi - prod) + ahi * blo + alo * bhi) + alo * blo
    chi_lo += f * _PI_LO
    th = x - chi_hi
    tl = (x - th - chi_hi) - chi_lo
    s = sin(th)
    cth = cos(th)
    cosv = cth - s * tl
    sinv = s + cth * tl
    return sqrt(2.0 / (_PI_HI * x)) * (p * cosv - q * sinv)


cdef void _miller_two(long n, double x, double *out_jn, double *out_jn1):
    cdef long base = n + 1
    cdef long xc = <long>ceil(x)
    cdef long nstart, k
    cdef double fp = 0.0
    cdef double fc = 1.0e-30
    cdef double jn = 0.0
    cdef double jn1 = 0.0
    cdef double total = 0.0
    cdef double comp = 0.0
    cdef double two_over_x = 2.0 / x
    cdef double t, s, fn, sc
    if xc > base:
        base = xc
    nstart = base + 40 + <long>(14.0 * pow(base, 1.0 / 3.0))
    k = nstart
    while k >= 0:
        if k == n:
            jn = fc
        elif k == n + 1:
            jn1 = fc
        if k % 2 == 0:
            t = fc if k == 0 else 2.0 * fc
            s = total + t
            if fabs(total) >= fabs(t):
                comp += (total - s) + t
            else:
                comp += (t - s) + total
            total = s
        if k > 0:
            fn = k * two_over_x * fc - fp
            fp = fc
            fc = fn
            if fabs(fc) > 1e250:
                sc = 2.0 ** -832
                fc *= sc
                fp *= sc
                total *= sc
                comp *= sc
                jn *= sc
                jn1 *= sc
        k -= 1
    s = total + comp
    out_jn[0] = jn / s
    out_jn1[0] = jn1 / s


def bessel_j_two(long n, double x):
    """(J_n(x), J_{n+1}(x)) for integer n >= 0, x >= 0."""
    cdef double jn, jn1
    if x == 0.0:
        return (1.0, 0.0) if n == 0 else (0.0, 0.0)
    if x >= 300.0 and x >= (n + 2) * (n + 2):
        return _hankel_j(n, x), _hankel_j(n + 1, x)
    _miller_two(n, x, &jn, &jn1)
    return jn, jn1


def bessel_j_one(long n, double x):
    """J_n(x)."""
    cdef double jn, jn1
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x >= 300.0 and x >= (n + 1) * (n + 1):
        return _hankel_j(n, x)
    _miller_two(n, x, &jn, &jn1)
    return jn


cdef void _k01_series_scaled(double x, double *k0_out, double *k1_out):
    cdef double q = 0.25 * x * x
    cdef double lg = log(0.5 * x)
    cdef double t0 = 1.0
    cdef double i0 = 1.0
    cdef double s0 = 0.0
    cdef double t1 = 1.0
    cdef double i1 = 1.0
    cdef double s1 = 2.0 * _GAMMA - 1.0
    cdef double hk = 0.0
    cdef double k0, k1, ex
    cdef long k = 1
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
    ex = exp(x)
    k0_out[0] = k0 * ex
    k1_out[0] = k1 * ex


cdef int _k01_cf2_scaled(double x, double *k0_out, double *k1_out):
    cdef double a = -0.25
    cdef double b = 2.0 + 2.0 * x
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double delh = d
    cdef double q1 = 0.0
    cdef double q2 = 1.0
    cdef double c = 0.25
    cdef double q = c
    cdef double s = 1.0 + q * delh
    cdef double qnew, dels
    cdef long i = 1
    cdef int ok = 0
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
        if fabs(dels) < 1e-17 * fabs(s):
            ok = 1
            break
        i += 1
    if not ok:
        return -1
    h = 0.25 * h
    k0_out[0] = sqrt(_PI_HI / (2.0 * x)) / s
    k1_out[0] = k0_out[0] * (x + 0.5 - h) / x
    return 0


def bessel_k_scaled_two(long n, double x):
    """(e^x K_n(x), e^x K_{n+1}(x)) for integer n >= 0, x > 0."""
    cdef double kp, kc, knext
    cdef long j
    if x <= 2.0:
        _k01_series_scaled(x, &kp, &kc)
    else:
        if _k01_cf2_scaled(x, &kp, &kc) != 0:
            raise ArithmeticError("K continued fraction did not converge")
    if n == 0:
        return kp, kc
    j = 1
    while j <= n:
        knext = kp + j * (2.0 / x) * kc
        if knext > 1e305:
            raise ArithmeticError(
                "K_%d(%r) overflows double precision" % (j + 1, x))
        kp = kc
        kc = knext
        j += 1
    return kp, kc


def sturm_count(double[::1] diag, double[::1] off2, double lam):
    """Number of eigenvalues < lam of the symmetric tridiagonal matrix with
    diagonal `diag` and squared off-diagonals `off2` (off2[i] couples rows
    i and i+1)."""
    cdef double pivmin = 1e-290
    cdef double q = diag[0] - lam
    cdef long cnt = 1 if q < 0.0 else 0
    cdef long n = diag.shape[0]
    cdef long i
    if -pivmin < q < pivmin:
        q = -pivmin
    for i in range(1, n):
        q = diag[i] - lam - off2[i - 1] / q
        if q < 0.0:
            cnt += 1
        if -pivmin < q < pivmin:
            q = -pivmin
    return cnt
