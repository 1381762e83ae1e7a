"""Brute-force quadrature of the gauge functional and numeric minimizers.

The functional is integrated directly over the density: dense composite
trapezoid sums (Richardson-refined once) of eval_density against z, z^2 and
rho^2 weights, with the azimuthal integral folded in closed form per parity.
The density is separable in (rho, z), so the tensor product of one rho line
and one z line of eval_density samples reconstructs the full 2D integrand
exactly; nothing else is shared with the closed-form path of `magnetics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError, NumericalError
from ..magnetics import FieldSpec, GaugeFamily
from ..moments import TAIL_WIDTHS, AngularParity, eval_density
from ..spectrum import BoundState, WellGeometry
from ..units import CONSTANTS, PhysicalConstants

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadMoments:
    """Quadrature-normalized density moments (independent of `moments`)."""

    z_mean: float
    z2_mean: float
    rho2_mean: float
    volume: float   # total density integral over the truncated domain


def _trapz(values: list[float], h: float) -> float:
    return h * (0.5 * (values[0] + values[-1]) + sum(values[1:-1]))


def _rho_line(state: BoundState, geom: WellGeometry, n_inner: int,
              z_ref: float) -> tuple[float, float]:
    # composite trapezoid of the density against rho drho and rho^3 drho,
    # split at the potential edge where the profile has a kink
    r = geom.radius
    rho_max = r + TAIL_WIDTHS / state.kappa
    s0 = s2 = 0.0
    for a, b, n in ((0.0, r, n_inner),
                    (r, rho_max, n_inner)):
        h = (b - a) / n
        vals = [eval_density(state, geom, a + i * h, z_ref)
                for i in range(n + 1)]
        rho = [a + i * h for i in range(n + 1)]
        s0 += _trapz([v * p for v, p in zip(vals, rho)], h)
        s2 += _trapz([v * p ** 3 for v, p in zip(vals, rho)], h)
    return s0, s2


def _z_line(state: BoundState, geom: WellGeometry, n: int,
            rho_ref: float) -> tuple[float, float, float]:
    h = geom.height / n
    vals = [eval_density(state, geom, rho_ref, i * h) for i in range(n + 1)]
    zs = [i * h for i in range(n + 1)]
    w0 = _trapz(vals, h)
    w1 = _trapz([v * z for v, z in zip(vals, zs)], h)
    w2 = _trapz([v * z * z for v, z in zip(vals, zs)], h)
    return w0, w1, w2


def quadrature_moments(state: BoundState, geom: WellGeometry,
                       n_rho: int = 3000, n_z: int = 1500) -> QuadMoments:
    """Density moments by dense trapezoid sums with one Richardson step."""
    z_ref = geom.height * 0.5 if state.qn.kz % 2 == 1 \
        else geom.height / (2.0 * state.qn.kz)
    rho_ref = geom.radius * 0.43
    base = eval_density(state, geom, rho_ref, z_ref)
    if base <= 0.0:
        raise NumericalError("reference density sample vanished")

    def assemble(nr: int, nz: int):
        s0, s2 = _rho_line(state, geom, nr, z_ref)
        w0, w1, w2 = _z_line(state, geom, nz, rho_ref)
        # separable density: D(rho, z) = rho_line(rho) * z_line(z) / base
        two_pi = 2.0 * math.pi
        vol = two_pi * s0 * w0 / base
        zm = w1 / w0
        z2m = w2 / w0
        rho2 = s2 / s0
        return vol, zm, z2m, rho2

    c1 = assemble(n_rho, n_z)
    c2 = assemble(2 * n_rho, 2 * n_z)
    vol, zm, z2m, rho2 = ((4.0 * b - a) / 3.0 for a, b in zip(c1, c2))
    return QuadMoments(z_mean=zm, z2_mean=z2m, rho2_mean=rho2, volume=vol)


_QM_CACHE: dict[tuple, QuadMoments] = {}


def _cached_moments(state: BoundState, geom: WellGeometry) -> QuadMoments:
    key = (state, geom)
    if key not in _QM_CACHE:
        _QM_CACHE[key] = quadrature_moments(state, geom)
    return _QM_CACHE[key]


def _x2_factor(m: int, parity: AngularParity) -> float:
    if m == 1 and parity is AngularParity.COSINE:
        return 0.75
    if m == 1 and parity is AngularParity.SINE:
        return 0.25
    return 0.5


def numeric_functional(state: BoundState, geom: WellGeometry,
                       field: FieldSpec, gauge: GaugeFamily,
                       parity: AngularParity = AngularParity.AZIMUTHAL_AVERAGE,
                       constants: PhysicalConstants = CONSTANTS) -> float:
    """Gauge functional evaluated from quadrature density moments.

    Independent of the closed-form moment path: all state information enters
    via dense trapezoid sums over eval_density.
    """
    qm = _cached_moments(state, geom)
    lam, mu = gauge.lam_mu
    h = field.magnitude
    a = 0.5 * h + lam
    b = lam - 0.5 * h
    x2 = _x2_factor(state.qn.m, parity) * qm.rho2_mean
    quad = (a * a * qm.z2_mean + 2.0 * a * mu * qm.z_mean + mu * mu
            + b * b * x2)
    return quad / (2.0 * constants.c_au ** 2)


def _golden_min(f, lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def numeric_minimize(state: BoundState, geom: WellGeometry,
                     field: FieldSpec, kind: str,
                     parity: AngularParity = AngularParity.AZIMUTHAL_AVERAGE,
                     constants: PhysicalConstants = CONSTANTS
                     ) -> tuple[tuple[float, ...], float]:
    """Minimize the quadrature functional over a gauge family.

    Golden-section search for the circular family; alternating 1-D
    golden-section sweeps for the elliptic one.  Returns (params, min J).
    """
    if kind not in ("circular", "elliptic"):
        raise DomainError(f"unknown gauge family {kind!r}")
    h = field.magnitude
    mu_scale = max(h * geom.height, 1e-30)
    lam_scale = max(h, 1e-30)
    tol_mu = 1e-10 * mu_scale
    tol_lam = 1e-10 * lam_scale

    if kind == "circular":
        f = lambda mu: numeric_functional(
            state, geom, field, GaugeFamily.circular(mu), parity, constants)
        mu = _golden_min(f, -2.0 * mu_scale, 2.0 * mu_scale, tol_mu)
        return (mu,), f(mu)

    lam, mu = 0.0, 0.0
    j_prev = math.inf
    for _ in range(300):
        f_mu = lambda t: numeric_functional(
            state, geom, field, GaugeFamily.elliptic(lam, t), parity,
            constants)
        mu = _golden_min(f_mu, -2.0 * mu_scale, 2.0 * mu_scale, tol_mu)
        f_lam = lambda t: numeric_functional(
            state, geom, field, GaugeFamily.elliptic(t, mu), parity,
            constants)
        lam = _golden_min(f_lam, -2.0 * lam_scale, 2.0 * lam_scale, tol_lam)
        j_cur = f_lam(lam)
        if abs(j_prev - j_cur) <= 1e-14 * max(abs(j_cur), 1e-300) \
                and j_prev < math.inf:
            return (lam, mu), j_cur
        j_prev = j_cur
    raise NumericalError("alternating descent did not converge")
