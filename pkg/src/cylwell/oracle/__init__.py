"""Independent verification engines: extended-precision special functions,
a finite-difference radial eigensolver, and brute-force functional quadrature
with numeric gauge-parameter minimization."""

from . import highprec  # noqa: F401
