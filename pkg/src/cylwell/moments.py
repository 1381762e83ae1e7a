"""Density moments of an unperturbed bound state.

The quadratic field corrections consume exactly four numbers per state:
z-bar, <z^2>, <rho^2> and <x^2>.  The axial pair is analytic (infinite-well
sine density); the radial pair comes from panel Gauss-Legendre quadrature
over the oscillatory Bessel core and the exponentially decaying tail, the
latter evaluated with scaled functions so strong barriers never underflow.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import bessel_j_one, bessel_k_scaled_two
from .errors import DomainError, NumericalError
from .spectrum import BoundState, WellGeometry

#: tail truncation point rho_max = R + TAIL_WIDTHS/kappa; the neglected tail
#: weight is below e^-80 of the kept one
TAIL_WIDTHS = 40.0

_TAIL_BREAKS = (0.0, 0.375, 0.75, 1.5, 3.0, 6.0, 12.0, 24.0, 40.0)

NORM_RESIDUAL_TOL = 1e-10


class AngularParity(enum.Enum):
    """Real angular factor of a degenerate +-m pair, or their average."""

    COSINE = "cos"
    SINE = "sin"
    AZIMUTHAL_AVERAGE = "avg"


@dataclass(frozen=True)
class MomentSet:
    """Normalized density moments; var_z is derived in-place from the pair."""

    z_mean: float       # bohr
    z2_mean: float      # bohr^2
    rho2_mean: float    # bohr^2
    x2_mean: float      # bohr^2
    parity: AngularParity
    norm_residual: float = 0.0
    tail_bound: float = 0.0
    var_z: float = 0.0  # derived: z2_mean - z_mean^2

    def __post_init__(self) -> None:
        object.__setattr__(self, "var_z",
                           self.z2_mean - self.z_mean * self.z_mean)
        if not self.var_z > 0.0:
            raise DomainError(f"var_z must be positive, got {self.var_z!r}")
        if not (self.rho2_mean > 0.0 and self.x2_mean > 0.0):
            raise DomainError("rho2_mean and x2_mean must be positive")
        ratio = self.x2_mean / self.rho2_mean
        if min(abs(ratio - r) for r in (0.25, 0.5, 0.75)) > 1e-12:
            raise DomainError(
                f"x2/rho2 ratio {ratio!r} outside the closed angular set")
        if abs(self.norm_residual) > NORM_RESIDUAL_TOL:
            raise NumericalError(
                f"normalization residual {self.norm_residual!r} above "
                f"{NORM_RESIDUAL_TOL}")

    def translated(self, d: float) -> "MomentSet":
        """Axial moments rebooked for a shifted origin z' = z - d."""
        return MomentSet(
            z_mean=self.z_mean - d,
            z2_mean=self.z2_mean - 2.0 * d * self.z_mean + d * d,
            rho2_mean=self.rho2_mean,
            x2_mean=self.x2_mean,
            parity=self.parity,
            norm_residual=self.norm_residual,
            tail_bound=self.tail_bound,
        )


def axial_moments(kz: int, height: float) -> tuple[float, float]:
    """(z-bar, <z^2>) of the sin^2 axial density: closed forms."""
    if kz < 1:
        raise DomainError(f"axial index must be >= 1, got {kz}")
    if not height > 0.0:
        raise DomainError("height must be positive")
    z_mean = 0.5 * height
    z2_mean = height * height * (1.0 / 3.0
                                 - 1.0 / (2.0 * (math.pi * kz) ** 2))
    return z_mean, z2_mean


def x2_from_rho2(m: int, rho2_mean: float,
                 parity: AngularParity) -> float:
    """<x^2> from <rho^2> via the closed angular integrals.

    Factor 1/2 always, except the m = 1 real pair where cos/sin split to
    3/4 and 1/4.
    """
    if rho2_mean <= 0.0:
        raise DomainError("rho2_mean must be positive")
    if m == 1 and parity is AngularParity.COSINE:
        return 0.75 * rho2_mean
    if m == 1 and parity is AngularParity.SINE:
        return 0.25 * rho2_mean
    return 0.5 * rho2_mean


@lru_cache(maxsize=64)
def _leggauss(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    x, w = np.polynomial.legendre.leggauss(n)
    return tuple(map(float, x)), tuple(map(float, w))


def _panel_quad(f, a: float, b: float, nodes: int) -> float:
    xs, ws = _leggauss(nodes)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * sum(w * f(mid + half * x) for x, w in zip(xs, ws))


def _k_scaled(m: int, x: float) -> float:
    if m == 0:
        return bessel_k_scaled_two(0, x)[0]
    return bessel_k_scaled_two(m - 1, x)[1]


@dataclass(frozen=True)
class _RadialIntegrals:
    inner1: float
    inner3: float
    outer1: float
    outer3: float
    lommel_inner1: float
    tail_bound: float

    @property
    def norm(self) -> float:
        return self.inner1 + self.outer1


def _radial_integrals(state: BoundState, geom: WellGeometry,
                      refine: int = 1) -> _RadialIntegrals:
    m = state.qn.m
    kin = state.kin
    kappa = state.kappa
    r = geom.radius
    nodes = 16 * refine

    jsq = lambda rho: bessel_j_one(m, kin * rho) ** 2
    n_panels = max(4, int(math.ceil(kin * r / 2.0)))
    edges = [r * i / n_panels for i in range(n_panels + 1)]
    inner1 = sum(_panel_quad(lambda t: jsq(t) * t, a, b, nodes)
                 for a, b in zip(edges[:-1], edges[1:]))
    inner3 = sum(_panel_quad(lambda t: jsq(t) * t * t * t, a, b, nodes)
                 for a, b in zip(edges[:-1], edges[1:]))

    # outer piece: the K_m(kappa rho)^2 tail with amplitude matched at R,
    # written so every exponential factor is relative to the boundary
    kr = kappa * r
    k_at_r = _k_scaled(m, kr)
    jb = bessel_j_one(m, kin * r)
    jb2 = jb * jb

    def tail(rho: float, power: int) -> float:
        ratio = _k_scaled(m, kappa * rho) / k_at_r
        w = math.exp(-2.0 * kappa * (rho - r))
        return ratio * ratio * w * rho ** power

    s_edges = [r + t / kappa for t in _TAIL_BREAKS]
    outer1 = jb2 * sum(_panel_quad(lambda t: tail(t, 1), a, b, nodes)
                       for a, b in zip(s_edges[:-1], s_edges[1:]))
    outer3 = jb2 * sum(_panel_quad(lambda t: tail(t, 3), a, b, nodes)
                       for a, b in zip(s_edges[:-1], s_edges[1:]))

    # closed Lommel form for the core norm, used as a cross-check
    u = kin * r
    jp = bessel_j_one(m - 1, u) - (m / u) * bessel_j_one(m, u) if m >= 1 \
        else -bessel_j_one(1, u)
    lommel = 0.5 * r * r * (jp * jp + (1.0 - (m / u) ** 2) * jb2)

    rho_max = s_edges[-1]
    ratio_end = _k_scaled(m, kappa * rho_max) / k_at_r
    tail_bound = (jb2 * ratio_end * ratio_end * math.exp(-2.0 * TAIL_WIDTHS)
                  * rho_max ** 3 / (2.0 * kappa))
    return _RadialIntegrals(inner1=inner1, inner3=inner3,
                            outer1=outer1, outer3=outer3,
                            lommel_inner1=lommel, tail_bound=tail_bound)


def radial_moments(state: BoundState, geom: WellGeometry,
                   refine: int = 1) -> tuple[float, float]:
    """(norm_residual, <rho^2>) by piecewise panel quadrature.

    The residual is the relative disagreement between the quadrature core
    norm and its closed Lommel form.
    """
    ri = _radial_integrals(state, geom, refine)
    norm = ri.norm
    if not norm > 0.0:
        raise NumericalError("radial normalization collapsed")
    resid = (ri.inner1 - ri.lommel_inner1) / norm
    rho2 = (ri.inner3 + ri.outer3) / norm
    return resid, rho2


def compute_moments(state: BoundState, geom: WellGeometry,
                    parity: AngularParity = AngularParity.AZIMUTHAL_AVERAGE,
                    refine: int = 1) -> MomentSet:
    """Full MomentSet of a bound state (axial analytic, radial quadrature)."""
    z_mean, z2_mean = axial_moments(state.qn.kz, geom.height)
    ri = _radial_integrals(state, geom, refine)
    norm = ri.norm
    if not norm > 0.0:
        raise NumericalError("radial normalization collapsed")
    resid = (ri.inner1 - ri.lommel_inner1) / norm
    rho2 = (ri.inner3 + ri.outer3) / norm
    return MomentSet(
        z_mean=z_mean, z2_mean=z2_mean,
        rho2_mean=rho2,
        x2_mean=x2_from_rho2(state.qn.m, rho2, parity),
        parity=parity,
        norm_residual=resid,
        tail_bound=ri.tail_bound / norm,
    )


@lru_cache(maxsize=512)
def _radial_norm_cached(state: BoundState, geom: WellGeometry) -> float:
    return _radial_integrals(state, geom).norm


def eval_density(state: BoundState, geom: WellGeometry,
                 rho: float, z: float) -> float:
    """Azimuth-averaged normalized density |psi|^2 at (rho, z).

    Continuous across rho = R by construction (tail amplitude matched to the
    interior Bessel value at the boundary).
    """
    if rho < 0.0:
        raise DomainError(f"rho must be >= 0, got {rho!r}")
    if not 0.0 <= z <= geom.height:
        raise DomainError(f"z must lie in [0, height], got {z!r}")
    if z == 0.0 or z == geom.height:
        return 0.0  # infinite axial walls
    m = state.qn.m
    if rho <= geom.radius:
        radial = bessel_j_one(m, state.kin * rho)
    else:
        kr = state.kappa * geom.radius
        ratio = _k_scaled(m, state.kappa * rho) / _k_scaled(m, kr)
        radial = (bessel_j_one(m, state.kin * geom.radius) * ratio
                  * math.exp(-state.kappa * (rho - geom.radius)))
    norm = _radial_norm_cached(state, geom)
    axial = (2.0 / geom.height) * math.sin(
        state.qn.kz * math.pi * z / geom.height) ** 2
    return radial * radial / norm * axial / (2.0 * math.pi)
