import math

import pytest

from cylwell.errors import DomainError
from cylwell.moments import (AngularParity, MomentSet, axial_moments,
                             compute_moments, eval_density, radial_moments,
                             x2_from_rho2)
from cylwell.oracle.functional import quadrature_moments
from cylwell.spectrum import enumerate_states


def _ground(geom, m=0):
    return enumerate_states(geom, m, 1)[m].states[0]


def test_axial_mean_is_midplane():
    for kz in (1, 2, 5):
        zm, _ = axial_moments(kz, 7.3)
        assert zm == 7.3 / 2


def test_axial_second_moment_closed_form():
    # independent oracle: midpoint-rule quadrature of z^2 (2/l) sin^2
    l = 1.0
    n = 200000
    h = l / n
    acc = sum((2.0 / l) * math.sin(math.pi * (i + 0.5) * h / l) ** 2
              * ((i + 0.5) * h) ** 2 for i in range(n)) * h
    _, z2 = axial_moments(1, l)
    assert z2 == pytest.approx(1.0 / 3.0 - 1.0 / (2.0 * math.pi ** 2),
                               abs=1e-12)
    assert z2 == pytest.approx(acc, rel=1e-8)


def test_axial_variance_limit():
    l = 2.0
    _, z2 = axial_moments(40, l)
    var = z2 - (l / 2) ** 2
    assert var == pytest.approx(l * l / 12.0, rel=1e-3)


def test_axial_domain():
    with pytest.raises(DomainError):
        axial_moments(0, 1.0)
    with pytest.raises(DomainError):
        axial_moments(1, -1.0)


def test_x2_factors():
    assert x2_from_rho2(0, 2.0, AngularParity.COSINE) == 1.0
    assert x2_from_rho2(0, 2.0, AngularParity.SINE) == 1.0
    assert x2_from_rho2(0, 2.0, AngularParity.AZIMUTHAL_AVERAGE) == 1.0
    assert x2_from_rho2(1, 2.0, AngularParity.COSINE) == 1.5
    assert x2_from_rho2(1, 2.0, AngularParity.SINE) == 0.5
    assert x2_from_rho2(1, 2.0, AngularParity.AZIMUTHAL_AVERAGE) == 1.0
    assert x2_from_rho2(2, 2.0, AngularParity.COSINE) == 1.0
    assert x2_from_rho2(2, 2.0, AngularParity.SINE) == 1.0


def test_norm_residual_against_lommel(paper_geom):
    for m in (0, 1, 2):
        st = _ground(paper_geom, m)
        resid, rho2 = radial_moments(st, paper_geom)
        assert abs(resid) <= 1e-10
        assert rho2 > 0.0


def test_rho2_against_dense_trapezoid(paper_geom):
    st = _ground(paper_geom)
    _, rho2 = radial_moments(st, paper_geom)
    qm = quadrature_moments(st, paper_geom)
    assert rho2 == pytest.approx(qm.rho2_mean, rel=1e-8)


def test_rho2_bounded_by_uniform_disc(paper_geom):
    st = _ground(paper_geom)
    _, rho2 = radial_moments(st, paper_geom)
    rho_max = paper_geom.radius + 40.0 / st.kappa
    assert rho2 < rho_max ** 2 / 2.0


def test_outside_share_vanishes_at_strong_barrier(strong_geom):
    from cylwell.moments import _radial_integrals
    st = _ground(strong_geom)
    ri = _radial_integrals(st, strong_geom)
    assert ri.outer1 < 1e-6 * ri.norm


def test_rho2_grows_with_radial_index(paper_geom):
    states = enumerate_states(paper_geom, 0, 20)[0].states
    by_k = {}
    for st in states:
        if st.qn.kz == 1:
            by_k[st.qn.k] = st
    vals = [radial_moments(by_k[k], paper_geom)[1] for k in (1, 2, 3)]
    assert vals[0] < vals[1] < vals[2]


def test_moment_set_invariants(paper_geom):
    st = _ground(paper_geom)
    ms = compute_moments(st, paper_geom)
    assert ms.var_z > 0 and ms.rho2_mean > 0 and ms.x2_mean > 0
    assert ms.z_mean == pytest.approx(paper_geom.height / 2, rel=1e-12)
    assert ms.x2_mean / ms.rho2_mean == 0.5
    assert abs(ms.norm_residual) <= 1e-10
    assert ms.tail_bound < 1e-25


def test_refinement_stability(paper_geom):
    for m in (0, 1):
        st = _ground(paper_geom, m)
        ms1 = compute_moments(st, paper_geom, refine=1)
        ms2 = compute_moments(st, paper_geom, refine=2)
        for name in ("z_mean", "z2_mean", "rho2_mean", "x2_mean"):
            a, b = getattr(ms1, name), getattr(ms2, name)
            assert abs(a - b) <= 1e-9 * abs(b)


def test_translation_bookkeeping():
    ms = MomentSet(z_mean=3.0, z2_mean=10.0, rho2_mean=4.0, x2_mean=2.0,
                   parity=AngularParity.AZIMUTHAL_AVERAGE)
    for d in (0.7, -2.5, 123.0):
        t = ms.translated(d)
        assert t.z_mean == ms.z_mean - d
        assert t.var_z == pytest.approx(ms.var_z, rel=1e-12)


def test_invalid_moment_sets_rejected():
    with pytest.raises(DomainError):
        MomentSet(z_mean=3.0, z2_mean=9.0, rho2_mean=4.0, x2_mean=2.0,
                  parity=AngularParity.AZIMUTHAL_AVERAGE)  # var_z = 0
    with pytest.raises(DomainError):
        MomentSet(z_mean=3.0, z2_mean=10.0, rho2_mean=4.0, x2_mean=1.2,
                  parity=AngularParity.AZIMUTHAL_AVERAGE)  # ratio 0.3


def test_density_boundary_and_continuity(paper_geom):
    st = _ground(paper_geom)
    assert eval_density(st, paper_geom, 10.0, 0.0) == 0.0
    assert eval_density(st, paper_geom, 10.0, paper_geom.height) == 0.0
    r = paper_geom.radius
    inside = eval_density(st, paper_geom, r * (1 - 1e-13),
                          paper_geom.height / 2)
    outside = eval_density(st, paper_geom, r * (1 + 1e-13),
                           paper_geom.height / 2)
    assert abs(inside - outside) / inside <= 1e-10


def test_density_normalization(paper_geom):
    st = _ground(paper_geom)
    qm = quadrature_moments(st, paper_geom)
    assert qm.volume == pytest.approx(1.0, abs=1e-8)


def test_density_domain(paper_geom):
    st = _ground(paper_geom)
    with pytest.raises(DomainError):
        eval_density(st, paper_geom, -0.1, 1.0)
    with pytest.raises(DomainError):
        eval_density(st, paper_geom, 1.0, -0.1)
    with pytest.raises(DomainError):
        eval_density(st, paper_geom, 1.0, paper_geom.height * 1.01)
