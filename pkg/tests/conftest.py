import pytest

from cylwell import to_atomic_units
from cylwell.spectrum import WellGeometry


@pytest.fixture(scope="session")
def paper_geom() -> WellGeometry:
    """Default geometry: R = 2.75 nm, l = 4 nm, V0 = 1 eV."""
    return WellGeometry(
        radius=to_atomic_units(2.75, "nm"),
        height=to_atomic_units(4.0, "nm"),
        barrier=to_atomic_units(1.0, "eV"),
    )


@pytest.fixture(scope="session")
def strong_geom() -> WellGeometry:
    """Quasi-infinite lateral barrier: V0 = 1e4 eV at the default radius."""
    return WellGeometry(
        radius=to_atomic_units(2.75, "nm"),
        height=to_atomic_units(4.0, "nm"),
        barrier=to_atomic_units(1.0e4, "eV"),
    )
