"""Physical constants and unit conversions.

Everything numerical in this package is evaluated in Hartree atomic units
(hbar = m_e = e = 1).  Laboratory units (nm, eV, kOe, meV) appear only at
the I/O boundary and are converted through the single constant table below.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """Conversion factors between laboratory units and atomic units.

    Values pinned to CODATA 2018 (physics.nist.gov/cuu/Constants).
    """

    # Hartree energy in eV: 27.211 386 245 988(53) eV
    hartree_in_ev: float = 27.211386245988
    # Bohr radius in nm: 0.052 917 721 0903(80) nm
    bohr_in_nm: float = 0.0529177210903
    # Atomic unit of magnetic flux density: 2.350 517 567 58(71) x 1e5 T
    au_field_in_tesla: float = 2.35051756758e5
    # 1 kOe = 1000 G = 0.1 T, exact Gaussian/SI bridge
    koe_in_tesla: float = 0.1
    # Speed of light in a.u. = inverse fine-structure constant 1/alpha
    c_au: float = 137.035999084

    def __post_init__(self) -> None:
        for name in ("hartree_in_ev", "bohr_in_nm", "au_field_in_tesla",
                     "koe_in_tesla", "c_au"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"constant {name} must be positive")

    def table_hash(self) -> str:
        """Stable fingerprint of the constant table (goes in output headers)."""
        payload = ",".join(
            repr(v) for v in (self.hartree_in_ev, self.bohr_in_nm,
                              self.au_field_in_tesla, self.koe_in_tesla,
                              self.c_au)
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


#: Single source of truth used by every module.
CONSTANTS = PhysicalConstants()

_SUPPORTED_UNITS = ("nm", "eV", "kOe")


def to_atomic_units(value: float, unit: str,
                    constants: PhysicalConstants = CONSTANTS) -> float:
    """Convert a tagged quantity to atomic units (bohr / hartree / a.u. field).

    Parameters
    ----------
    value : finite float in the tagged unit
    unit : one of "nm", "eV", "kOe"
    """
    if unit not in _SUPPORTED_UNITS:
        raise ConfigError(f"unsupported unit tag {unit!r}; expected one of "
                          f"{_SUPPORTED_UNITS}")
    v = float(value)
    if v != v or v in (float("inf"), float("-inf")):
        raise DomainError(f"value must be finite, got {value!r}")
    if unit == "nm":
        return v / constants.bohr_in_nm
    if unit == "eV":
        return v / constants.hartree_in_ev
    return v * constants.koe_in_tesla / constants.au_field_in_tesla


def energy_to_mev(value_hartree: float,
                  constants: PhysicalConstants = CONSTANTS) -> float:
    """Hartree -> meV (inverse of to_atomic_units(. , "eV") up to 1e-14 rel)."""
    v = float(value_hartree)
    if v != v or v in (float("inf"), float("-inf")):
        raise DomainError(f"value must be finite, got {value_hartree!r}")
    return v * constants.hartree_in_ev * 1000.0


#: loose CODATA anchor bands; a table outside these has been tampered with
_ANCHORS = {
    "hartree_in_ev": (27.2113, 27.2115),
    "bohr_in_nm": (0.05291770, 0.05291775),
    "au_field_in_tesla": (2.35050e5, 2.35053e5),
    "koe_in_tesla": (0.1, 0.1),
    "c_au": (137.035998, 137.036000),
}


def verify_roundtrips(constants: PhysicalConstants = CONSTANTS,
                      rel_tol: float = 1e-14) -> list[str]:
    """Round-trip and anchor checks; returns a list of failure messages."""
    failures = []
    probes = (("nm", 4.0, constants.bohr_in_nm),
              ("eV", 1.0, constants.hartree_in_ev),
              ("kOe", 100.0, constants.au_field_in_tesla / constants.koe_in_tesla))
    for unit, x, scale in probes:
        back = to_atomic_units(x, unit, constants) * scale
        if abs(back - x) > rel_tol * abs(x):
            failures.append(f"round trip through a.u. failed for {x} {unit}: "
                            f"got {back!r}")
    e = energy_to_mev(to_atomic_units(0.057, "eV", constants), constants)
    if abs(e - 57.0) > rel_tol * 57.0:
        failures.append(f"eV->hartree->meV round trip failed: {e!r}")
    for name, (lo, hi) in _ANCHORS.items():
        v = getattr(constants, name)
        if not lo <= v <= hi:
            failures.append(f"constant {name}={v!r} outside its CODATA "
                            f"anchor band [{lo}, {hi}]")
    return failures
