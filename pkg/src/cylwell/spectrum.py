"""Unperturbed spectrum of the finite circular-cylinder well.

The in-plane problem separates into Bessel interior / modified-Bessel
exterior pieces; bound energies are the zeros of the cross-multiplied
logarithmic-derivative matching residual

    g(E) = k J'_m(kR) K_m(aR) - a K'_m(aR) J_m(kR),

with k = sqrt(2 E_xy) and a = sqrt(2 (V0 - E_xy)).  The axial problem is an
infinite well of height l: E_z = kz^2 pi^2 / (2 l^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._backend import bessel_j_two, bessel_k_scaled_two
from .errors import DomainError, NumericalError
from .specfun import bessel_j, bessel_j_prime, bessel_k_scaled

#: scan step in u = k*R; well below the >= 3.1 spacing of consecutive
#: Bessel zeros, so no pair of eigenvalues can share a scan cell
_SCAN_STEP = 0.01

#: residual tolerance (relative to the local term magnitudes) accepted for a
#: converged eigenvalue
RESIDUAL_RTOL = 1e-12


@dataclass(frozen=True)
class WellGeometry:
    """Cylinder radius, height and lateral barrier, in atomic units."""

    radius: float   # bohr
    height: float   # bohr
    barrier: float  # hartree

    def __post_init__(self) -> None:
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError(f"radius must be positive, got {self.radius!r}")
        if not (self.height > 0.0 and math.isfinite(self.height)):
            raise DomainError(f"height must be positive, got {self.height!r}")
        if not (self.barrier > 0.0 and math.isfinite(self.barrier)):
            raise DomainError(
                f"barrier must be positive and finite, got {self.barrier!r}")

    @property
    def strength(self) -> float:
        """Dimensionless barrier strength X = R sqrt(2 V0)."""
        return self.radius * math.sqrt(2.0 * self.barrier)


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """(m, k, kz): angular index >= 0, radial index >= 1, axial index >= 1."""

    m: int
    k: int
    kz: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.k < 1 or self.kz < 1:
            raise DomainError(f"invalid quantum numbers {self!r}")


@dataclass(frozen=True)
class BoundState:
    """A bound level with its derived wavefunction parameters."""

    qn: QuantumNumbers
    exy: float          # in-plane energy, hartree
    ez: float           # axial energy, hartree
    etotal: float       # exy + ez, stored exactly as the float sum
    kin: float          # sqrt(2 exy), 1/bohr
    kappa: float        # sqrt(2 (V0 - exy)), 1/bohr
    outside_amp: float  # J_m(kin R) / K_m(kappa R)
    eq_sign_variant: str = field(default="", compare=False)


def radial_mismatch(m: int, exy: float, geom: WellGeometry) -> float:
    """Cross-multiplied logarithmic-derivative matching residual g(E_xy).

    Continuous on 0 < E_xy < V0, zero exactly at eigenvalues, and nonzero at
    zeros of J_m (no poles, unlike the derivative quotient itself).
    """
    if not 0.0 < exy < geom.barrier:
        raise DomainError(
            f"exy must lie strictly inside (0, barrier), got {exy!r}")
    kin = math.sqrt(2.0 * exy)
    kappa = math.sqrt(2.0 * (geom.barrier - exy))
    r = geom.radius
    term1 = kin * bessel_j_prime(m, kin * r) * _k_unscaled(m, kappa * r)
    term2 = kappa * _k_prime_unscaled(m, kappa * r) * bessel_j(m, kin * r)
    return term1 - term2


def _k_unscaled(m: int, x: float) -> float:
    # K_m without the underflow guard of specfun.bessel_k: the residual is
    # only reported where the product with J stays representable
    return bessel_k_scaled(m, x) * math.exp(-x)


def _k_prime_unscaled(m: int, x: float) -> float:
    # K'_m allowed to underflow gracefully to -0.0 at extreme arguments
    if m == 0:
        return -_k_unscaled(1, x)
    return -_k_unscaled(m - 1, x) - (m / x) * _k_unscaled(m, x)


def mismatch_scale(m: int, exy: float, geom: WellGeometry) -> float:
    """Magnitude scale |term1| + |term2| of the matching residual."""
    kin = math.sqrt(2.0 * exy)
    kappa = math.sqrt(2.0 * (geom.barrier - exy))
    r = geom.radius
    t1 = kin * bessel_j_prime(m, kin * r) * _k_unscaled(m, kappa * r)
    t2 = kappa * _k_prime_unscaled(m, kappa * r) * bessel_j(m, kin * r)
    return abs(t1) + abs(t2)


def _mismatch_scaled_u(m: int, u: float, geom: WellGeometry) -> float:
    # e^{aR}-scaled residual as a function of u = kin*R; same zeros as
    # radial_mismatch but immune to the exponential tail underflow of K
    x_str = geom.strength
    ar = math.sqrt(x_str * x_str - u * u)
    r = geom.radius
    if m == 0:
        j0, j1 = bessel_j_two(0, u)
        jm, jp = j0, -j1
        k0, k1 = bessel_k_scaled_two(0, ar)
        km, kp = k0, -k1
    else:
        jm1, jm = bessel_j_two(m - 1, u)
        jp = jm1 - (m / u) * jm
        km1, km = bessel_k_scaled_two(m - 1, ar)
        kp = -km1 - (m / ar) * km
    return (u / r) * jp * km - (ar / r) * kp * jm


def _brent(f, a: float, b: float, fa: float, fb: float,
           xtol: float, maxiter: int = 200) -> float:
    # classic Brent root refinement: bisection + secant/inverse quadratic
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise NumericalError("root bracket does not straddle zero")
    c, fc = a, fa
    d = e = b - a
    eps = 2.220446049250313e-16
    for _ in range(maxiter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * eps * abs(b) + 0.5 * xtol
        mid = 0.5 * (c - b)
        if abs(mid) <= tol or fb == 0.0:
            return b
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = mid
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * mid * s
                q = 1.0 - s
            else:
                q = fa / fc
                rr = fb / fc
                p = s * (2.0 * mid * q * (q - rr) - (b - a) * (rr - 1.0))
                q = (q - 1.0) * (rr - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * mid * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = mid
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, mid)
        fb = f(b)
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
    raise NumericalError("root refinement did not converge")


def solve_radial_levels(m: int, geom: WellGeometry) -> list[float]:
    """All bound in-plane energies for angular index m, ascending.

    Scans the scaled matching residual on a u = kin*R grid over (0, X) and
    refines each sign change with Brent's method; an empty list means no
    bound level exists for this m.
    """
    if not 0 <= m <= 58:
        raise DomainError(f"angular index must lie in 0..58, got {m}")
    x_str = geom.strength
    f = lambda u: _mismatch_scaled_u(m, u, geom)
    n_steps = int(x_str / _SCAN_STEP)
    us = [(i + 1) * _SCAN_STEP for i in range(n_steps)
          if (i + 1) * _SCAN_STEP < x_str * (1.0 - 1e-12)]
    us.append(x_str * (1.0 - 1e-9))
    roots: list[float] = []
    prev_u = us[0]
    prev_g = f(prev_u)
    for u in us[1:]:
        g = f(u)
        if g == 0.0:
            roots.append(u)
        elif (g > 0.0) != (prev_g > 0.0):
            if prev_g == 0.0:
                pass  # already recorded at the previous node
            else:
                xtol = 1e-15 * max(1.0, u)
                roots.append(_brent(f, prev_u, u, prev_g, g, xtol))
        prev_u, prev_g = u, g
    r2 = geom.radius * geom.radius
    return [u * u / (2.0 * r2) for u in roots]


def axial_energy(kz: int, geom: WellGeometry) -> float:
    """Infinite-well axial level kz^2 pi^2 / (2 l^2), hartree."""
    if kz < 1:
        raise DomainError(f"axial index must be >= 1, got {kz}")
    return (kz * math.pi) ** 2 / (2.0 * geom.height ** 2)


def _sign_variant(m: int, exy: float, geom: WellGeometry) -> str:
    # which sign of the m>0 product identity the level satisfies:
    #   k K_m J_{m-1} = -a J_m K_{m-1}   ("minus", follows from matching)
    #   k K_m J_{m-1} = +a J_m K_{m-1}   ("plus")
    if m == 0:
        return "m0"
    kin = math.sqrt(2.0 * exy)
    kappa = math.sqrt(2.0 * (geom.barrier - exy))
    u = kin * geom.radius
    ar = kappa * geom.radius
    jm1, jm = bessel_j_two(m - 1, u)
    km1, km = bessel_k_scaled_two(m - 1, ar)
    lhs = kin * km * jm1
    minus = abs(lhs + kappa * jm * km1)
    plus = abs(lhs - kappa * jm * km1)
    return "minus" if minus <= plus else "plus"


def make_bound_state(m: int, k: int, kz: int, exy: float,
                     geom: WellGeometry) -> BoundState:
    """Assemble a BoundState from a solved in-plane energy, with checks."""
    if not 0.0 < exy < geom.barrier:
        raise DomainError("in-plane energy must satisfy 0 < exy < barrier")
    kin = math.sqrt(2.0 * exy)
    kappa = math.sqrt(2.0 * (geom.barrier - exy))
    scale = mismatch_scale(m, exy, geom)
    resid = radial_mismatch(m, exy, geom)
    if abs(resid) > RESIDUAL_RTOL * max(scale, 5e-324):
        raise NumericalError(
            f"matching residual {resid!r} above tolerance for "
            f"(m={m}, exy={exy!r})")
    u = kin * geom.radius
    ar = kappa * geom.radius
    jm = bessel_j(m, u)
    # amplitude via logs so the strong-barrier limit does not underflow
    log_amp = (0.0 if jm == 0.0 else math.log(abs(jm))) + ar \
        - math.log(bessel_k_scaled(m, ar))
    if jm == 0.0:
        amp = 0.0
    elif log_amp > 709.0:
        amp = math.copysign(math.inf, jm)
    else:
        amp = math.copysign(math.exp(log_amp), jm)
    ez = axial_energy(kz, geom)
    return BoundState(
        qn=QuantumNumbers(m, k, kz),
        exy=exy, ez=ez, etotal=exy + ez,
        kin=kin, kappa=kappa, outside_amp=amp,
        eq_sign_variant=_sign_variant(m, exy, geom),
    )


@dataclass(frozen=True)
class LevelSet:
    """Lowest levels for one angular index, ascending in total energy."""

    m: int
    states: tuple[BoundState, ...]
    complete: bool  # False when fewer bound combinations exist than asked


def enumerate_states(geom: WellGeometry, m_max: int,
                     count_per_m: int) -> list[LevelSet]:
    """Lowest `count_per_m` levels for each m = 0..m_max.

    Ascending by total energy, ties broken lexicographically by (k, kz); the
    axial index scan provably covers every competitive combination because it
    stops only once the axial energy alone exceeds the current cutoff.
    """
    if m_max < 0 or count_per_m < 1:
        raise DomainError("m_max must be >= 0 and count_per_m >= 1")
    out: list[LevelSet] = []
    for m in range(m_max + 1):
        radial = solve_radial_levels(m, geom)
        if not radial:
            out.append(LevelSet(m=m, states=(), complete=False))
            continue
        exy_min = radial[0]
        candidates: list[tuple[float, int, int, float]] = []
        cutoff = math.inf
        kz = 1
        while axial_energy(kz, geom) + exy_min <= cutoff:
            ez = axial_energy(kz, geom)
            for idx, exy in enumerate(radial):
                if exy + ez <= cutoff or len(candidates) < count_per_m:
                    candidates.append((exy + ez, idx + 1, kz, exy))
            candidates.sort(key=lambda t: (t[0], t[1], t[2]))
            if len(candidates) >= count_per_m:
                cutoff = candidates[count_per_m - 1][0]
                candidates = candidates[:count_per_m +
                                        len(radial)]  # keep a safety margin
            kz += 1
        chosen = candidates[:count_per_m]
        states = tuple(make_bound_state(m, k, kz_, exy, geom)
                       for _, k, kz_, exy in chosen)
        out.append(LevelSet(m=m, states=states,
                            complete=len(states) == count_per_m))
    return out
