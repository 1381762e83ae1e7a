"""Quadratic magnetic-field corrections by vector-potential variation.

A transverse field H along y enters through the symmetric base potential
A0 = (Hz/2, 0, -Hx/2).  Adding the gradient of f does not change the field,
and for a real unperturbed state the total quadratic correction equals the
minimum over f of the manifestly non-negative functional

    J(f) = 1/(2c^2) * <(A0 + grad f)^2>.

Two gradient families are carried: f = mu*x ("circular", grad f = mu
x-hat) and f = lambda*x*z + mu*x ("elliptic", grad f = (lambda z + mu, 0,
lambda x)).  With <x> = 0 by symmetry the functional is an explicit
quadratic in the parameters and in four density moments, so both optima
are closed forms:

    circular:  mu* = -(H/2) z-bar,
               E1 = H^2/(8 c^2) * (<x^2> + var z)
    elliptic:  lambda* = (H/2) (<x^2> - var z)/(<x^2> + var z),
               mu* = -(H/2 + lambda*) z-bar,
               E2 = H^2/(2 c^2) * <x^2> var z / (<x^2> + var z)

E2 <= E1 (the circular family is the lambda = 0 slice), with equality
exactly when <x^2> = var z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .moments import AngularParity, MomentSet, compute_moments
from .spectrum import BoundState, LevelSet, WellGeometry
from .units import CONSTANTS, PhysicalConstants, energy_to_mev

#: fields above this (kOe) are outside the weak-field regime the quadratic
#: treatment assumes; flagged, not rejected
WEAK_FIELD_LIMIT_KOE = 100.0


@dataclass(frozen=True)
class FieldSpec:
    """Homogeneous magnetic field along the y axis (transverse), in a.u."""

    magnitude: float
    beyond_weak_regime: bool = False

    def __post_init__(self) -> None:
        if self.magnitude < 0.0:
            raise DomainError("field magnitude must be >= 0")

    @classmethod
    def from_koe(cls, field_koe: float,
                 constants: PhysicalConstants = CONSTANTS) -> "FieldSpec":
        if field_koe < 0.0:
            raise DomainError("field must be >= 0 kOe")
        magnitude = field_koe * constants.koe_in_tesla \
            / constants.au_field_in_tesla
        return cls(magnitude=magnitude,
                   beyond_weak_regime=field_koe > WEAK_FIELD_LIMIT_KOE)


@dataclass(frozen=True)
class GaugeFamily:
    """Gradient-transformation family and its explicit parameters."""

    kind: str                   # "circular" | "elliptic"
    params: tuple[float, ...]   # (mu,) or (lam, mu)

    def __post_init__(self) -> None:
        if self.kind == "circular":
            if len(self.params) != 1:
                raise DomainError("circular gauge takes one parameter (mu)")
        elif self.kind == "elliptic":
            if len(self.params) != 2:
                raise DomainError(
                    "elliptic gauge takes two parameters (lambda, mu)")
        else:
            raise DomainError(f"unknown gauge kind {self.kind!r}")

    @classmethod
    def circular(cls, mu: float) -> "GaugeFamily":
        return cls(kind="circular", params=(mu,))

    @classmethod
    def elliptic(cls, lam: float, mu: float) -> "GaugeFamily":
        return cls(kind="elliptic", params=(lam, mu))

    @property
    def lam_mu(self) -> tuple[float, float]:
        if self.kind == "circular":
            return 0.0, self.params[0]
        return self.params


@dataclass(frozen=True)
class MagneticCorrection:
    """Minimum of the gauge functional within one family."""

    kind: str
    e_h2: float                      # hartree
    params_opt: tuple[float, ...]
    j_numeric: float | None = None   # optional independent quadrature value

    def __post_init__(self) -> None:
        if self.e_h2 < 0.0:
            raise DomainError("quadratic correction cannot be negative")
        if self.j_numeric is not None:
            if abs(self.e_h2 - self.j_numeric) > 1e-8 * max(self.e_h2, 1e-300):
                raise DomainError(
                    "closed-form and quadrature corrections disagree: "
                    f"{self.e_h2!r} vs {self.j_numeric!r}")


def first_order_correction(state: BoundState, field: FieldSpec) -> float:
    """Linear-in-field energy correction: identically zero.

    The unperturbed states are real while the linear perturbation operator
    is imaginary, so its expectation value vanishes for every state and
    every field strength.
    """
    return 0.0


def functional_j(moments: MomentSet, field: FieldSpec,
                 gauge: GaugeFamily,
                 constants: PhysicalConstants = CONSTANTS) -> float:
    """Gauge functional J(lambda, mu), closed form in the density moments.

    The x cross-term drops because <x> = 0 by symmetry; adding a constant
    to f does not enter the parameterization at all, so constant shifts
    leave the value bit-identical structurally.
    """
    lam, mu = gauge.lam_mu
    h = field.magnitude
    a = 0.5 * h + lam
    b = lam - 0.5 * h
    quad = (a * a * moments.z2_mean + 2.0 * a * mu * moments.z_mean
            + mu * mu + b * b * moments.x2_mean)
    return quad / (2.0 * constants.c_au ** 2)


def functional_j_gradient(moments: MomentSet, field: FieldSpec,
                          gauge: GaugeFamily,
                          constants: PhysicalConstants = CONSTANTS
                          ) -> tuple[float, float]:
    """(dJ/dlambda, dJ/dmu), closed form; vanishes at the family optimum."""
    lam, mu = gauge.lam_mu
    h = field.magnitude
    a = 0.5 * h + lam
    b = lam - 0.5 * h
    c2 = 2.0 * constants.c_au ** 2
    dlam = (2.0 * a * moments.z2_mean + 2.0 * mu * moments.z_mean
            + 2.0 * b * moments.x2_mean) / c2
    dmu = (2.0 * a * moments.z_mean + 2.0 * mu) / c2
    return dlam, dmu


def circular_correction(moments: MomentSet, field: FieldSpec,
                        constants: PhysicalConstants = CONSTANTS,
                        j_numeric: float | None = None) -> MagneticCorrection:
    """Stationary point of J over f = mu*x."""
    h = field.magnitude
    mu_opt = -0.5 * h * moments.z_mean
    e_h2 = h * h / (8.0 * constants.c_au ** 2) \
        * (moments.x2_mean + moments.var_z)
    return MagneticCorrection(kind="circular", e_h2=e_h2,
                              params_opt=(mu_opt,), j_numeric=j_numeric)


def elliptic_correction(moments: MomentSet, field: FieldSpec,
                        constants: PhysicalConstants = CONSTANTS,
                        j_numeric: float | None = None) -> MagneticCorrection:
    """Stationary point of J over f = lambda*x*z + mu*x."""
    h = field.magnitude
    den = moments.x2_mean + moments.var_z
    lam_opt = 0.5 * h * (moments.x2_mean - moments.var_z) / den
    mu_opt = -(0.5 * h + lam_opt) * moments.z_mean
    e_h2 = h * h / (2.0 * constants.c_au ** 2) \
        * moments.x2_mean * moments.var_z / den
    return MagneticCorrection(kind="elliptic", e_h2=e_h2,
                              params_opt=(lam_opt, mu_opt),
                              j_numeric=j_numeric)


@dataclass(frozen=True)
class CorrectedLevel:
    """One spectrum row: unperturbed and field-shifted totals, in meV."""

    state: BoundState
    e_mev: float
    e1_mev: float          # circular approximation
    e2_mev: float          # elliptic approximation
    e1_shift_mev: float
    e2_shift_mev: float
    moments: MomentSet


def corrected_spectrum(level_sets: list[LevelSet], geom: WellGeometry,
                       field: FieldSpec,
                       parity: AngularParity = AngularParity.AZIMUTHAL_AVERAGE,
                       constants: PhysicalConstants = CONSTANTS
                       ) -> list[list[CorrectedLevel]]:
    """Field-corrected totals for every enumerated state, order preserved."""
    out: list[list[CorrectedLevel]] = []
    for level_set in level_sets:
        rows = []
        for state in level_set.states:
            ms = compute_moments(state, geom, parity)
            e1 = circular_correction(ms, field, constants)
            e2 = elliptic_correction(ms, field, constants)
            if e2.e_h2 > e1.e_h2 * (1.0 + 1e-14):
                raise DomainError(
                    "variational ordering violated (elliptic above circular)")
            rows.append(CorrectedLevel(
                state=state,
                e_mev=energy_to_mev(state.etotal, constants),
                e1_mev=energy_to_mev(state.etotal + e1.e_h2, constants),
                e2_mev=energy_to_mev(state.etotal + e2.e_h2, constants),
                e1_shift_mev=energy_to_mev(e1.e_h2, constants),
                e2_shift_mev=energy_to_mev(e2.e_h2, constants),
                moments=ms,
            ))
        out.append(rows)
    return out
