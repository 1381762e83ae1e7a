"""Exception hierarchy shared across the package."""


class CylwellError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(CylwellError):
    """Bad configuration input (unknown key, invalid value, missing file)."""


class DomainError(CylwellError, ValueError):
    """Argument outside the certified domain of an operation."""


class NumericalError(CylwellError):
    """A numerical procedure failed to converge or lost validity."""


class ResolutionError(NumericalError):
    """A discretization is too coarse for a reliable answer."""


class BesselUnderflow(NumericalError):
    """K_n(x) is below the smallest normal double; use bessel_k_scaled."""


class BesselOverflow(NumericalError):
    """Result exceeds the double-precision range."""
