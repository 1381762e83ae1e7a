"""Kernel backend selection: compiled extension if available, else pure Python."""

from . import _purecore

try:
    from . import _fastcore as _impl
except ImportError:  # extension not built on this install
    _impl = _purecore

BACKEND = _impl.BACKEND_NAME


def backend_name() -> str:
    """Name of the active kernel backend ("compiled" or "python")."""
    return BACKEND


def available_backends():
    """Mapping of backend name -> kernel module, for tests and benchmarks."""
    table = {"python": _purecore}
    if _impl is not _purecore:
        table["compiled"] = _impl
    return table


bessel_j_one = _impl.bessel_j_one
bessel_j_two = _impl.bessel_j_two
bessel_k_scaled_two = _impl.bessel_k_scaled_two
sturm_count = _impl.sturm_count
