"""Bound states and quadratic magnetic-field corrections for a finite
circular-cylinder quantum well."""

__version__ = "0.1.0"

from ._backend import backend_name  # noqa: F401
from .magnetics import (FieldSpec, GaugeFamily,  # noqa: F401
                        MagneticCorrection, circular_correction,
                        corrected_spectrum, elliptic_correction,
                        first_order_correction, functional_j)
from .moments import (AngularParity, MomentSet,  # noqa: F401
                      axial_moments, compute_moments, eval_density,
                      radial_moments, x2_from_rho2)
from .spectrum import (BoundState, LevelSet,  # noqa: F401
                       QuantumNumbers, WellGeometry, axial_energy,
                       enumerate_states, radial_mismatch,
                       solve_radial_levels)
from .units import CONSTANTS, PhysicalConstants  # noqa: F401
from .units import energy_to_mev, to_atomic_units  # noqa: F401
