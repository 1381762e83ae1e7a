import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cylwell import specfun
from cylwell._backend import available_backends
from cylwell.errors import BesselUnderflow, DomainError
from cylwell.oracle import highprec


def test_j_at_origin():
    assert specfun.bessel_j(0, 0.0) == 1.0
    assert specfun.bessel_j(1, 0.0) == 0.0
    assert specfun.bessel_j(7, 0.0) == 0.0


def test_j_vanishes_at_first_zero():
    j01 = float(highprec.bessel_j_zero(0, 1))
    assert abs(specfun.bessel_j(0, j01)) <= 1e-12


def test_j_prime_extremum_of_j1():
    root = float(highprec.bessel_j_prime_zero(1, 1))
    assert root == pytest.approx(1.8411837813, abs=1e-9)
    assert abs(specfun.bessel_j_prime(1, root)) <= 1e-10


def test_k_reference_values():
    assert specfun.bessel_k(0, 1.0) == pytest.approx(
        float(highprec.bessel_k(0, 1.0)), rel=1e-13)
    assert specfun.bessel_k(1, 1.0) == pytest.approx(0.601907230197234,
                                                     rel=1e-12)
    assert specfun.bessel_k(0, 1.0) == pytest.approx(0.421024438240708,
                                                     rel=1e-12)


def test_k_positive_and_decreasing():
    for n in (0, 1, 3, 10):
        prev = math.inf
        for x in (0.05, 0.3, 1.0, 2.0, 5.0, 20.0, 100.0):
            v = specfun.bessel_k(n, x)
            assert 0.0 < v < prev
            prev = v


def test_k_scaled_identity():
    for n in (0, 1, 2, 5):
        for x in (0.01, 0.5, 1.0, 2.0, 7.0, 40.0, 100.0):
            lhs = specfun.bessel_k_scaled(n, x)
            rhs = specfun.bessel_k(n, x) * math.exp(x)
            assert lhs == pytest.approx(rhs, rel=1e-12)


def test_k_scaled_value():
    assert specfun.bessel_k_scaled(0, 1.0) == pytest.approx(
        math.e * 0.42102443824070834, rel=1e-12)


def test_k_scaled_asymptote_monotone():
    # e^x K_n(x) -> sqrt(pi/2x) with leading correction (4n^2-1)/(8x):
    # from below for n = 0, from above for n >= 1, monotonically
    prev0, prev1 = -math.inf, math.inf
    for x in (5.0, 20.0, 100.0, 500.0, 3000.0):
        lead = math.sqrt(math.pi / (2 * x))
        r0 = specfun.bessel_k_scaled(0, x) / lead
        r1 = specfun.bessel_k_scaled(1, x) / lead
        assert prev0 < r0 < 1.0
        assert 1.0 < r1 < prev1
        prev0, prev1 = r0, r1


def test_k_underflow_signal_points_to_scaled():
    with pytest.raises(BesselUnderflow, match="bessel_k_scaled"):
        specfun.bessel_k(0, 800.0)
    assert specfun.bessel_k_scaled(0, 800.0) > 0.0


def test_domain_rejections():
    with pytest.raises(DomainError):
        specfun.bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(61, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(0, -0.5)
    with pytest.raises(DomainError):
        specfun.bessel_j(0, 2e4)
    with pytest.raises(DomainError):
        specfun.bessel_k(0, 0.0)
    with pytest.raises(DomainError):
        specfun.bessel_k(0, math.nan)
    with pytest.raises(DomainError):
        specfun.bessel_j(0.5, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j_prime(2, 0.0)


def test_prime_identities_exact():
    assert specfun.bessel_j_prime(0, 1.5) == -specfun.bessel_j(1, 1.5)
    assert specfun.bessel_k_prime(0, 2.0) == -specfun.bessel_k(1, 2.0)
    x = 3.7
    expected = specfun.bessel_j(2, x) - (3.0 / x) * specfun.bessel_j(3, x)
    assert specfun.bessel_j_prime(3, x) == expected


def test_three_term_recurrence_j():
    for n in range(1, 30):
        for x in (0.7, 3.3, 11.9, 47.2, 180.0):
            jm, jc, jp = (specfun.bessel_j(n - 1, x), specfun.bessel_j(n, x),
                          specfun.bessel_j(n + 1, x))
            resid = jm + jp - (2.0 * n / x) * jc
            assert abs(resid) <= 1e-10 * max(1.0, abs(jc))


def test_three_term_recurrence_k():
    for n in range(1, 30):
        for x in (0.7, 3.3, 11.9, 47.2, 180.0):
            km, kc, kp = (specfun.bessel_k_scaled(n - 1, x),
                          specfun.bessel_k_scaled(n, x),
                          specfun.bessel_k_scaled(n + 1, x))
            resid = kp - km - (2.0 * n / x) * kc
            assert abs(resid) <= 1e-10 * max(1.0, abs(kc))


def test_sum_rule():
    for x in (0.5, 2.0, 8.0, 20.0):
        n_terms = min(int(2 * x) + 30, 61)
        total = specfun.bessel_j(0, x) ** 2
        total += 2.0 * sum(specfun.bessel_j(n, x) ** 2
                           for n in range(1, n_terms))
        assert abs(total - 1.0) <= 1e-10


def test_zero_interlacing_sign_structure():
    zeros = [float(highprec.bessel_j_zero(0, k)) for k in (1, 2, 3)]
    assert specfun.bessel_j(0, 0.5 * zeros[0]) > 0
    assert specfun.bessel_j(0, 0.5 * (zeros[0] + zeros[1])) < 0
    assert specfun.bessel_j(0, 0.5 * (zeros[1] + zeros[2])) > 0
    j1_first = float(highprec.bessel_j_zero(1, 1))
    assert zeros[0] < j1_first < zeros[1]


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=40),
       st.floats(min_value=1e-2, max_value=900.0))
def test_recurrence_property(n, x):
    jm = specfun.bessel_j(n - 1, x)
    jc = specfun.bessel_j(n, x)
    jp = specfun.bessel_j(n + 1, x)
    assert abs(jm + jp - (2.0 * n / x) * jc) <= 1e-10 * max(1.0, abs(jc))


def test_oracle_spot_agreement_large_x():
    for n, x in ((0, 500.0), (2, 305.0), (5, 999.5), (25, 700.0)):
        ref = highprec.bessel_j(n, x)
        val = specfun.bessel_j(n, x)
        assert float(abs(Fraction(val) - ref) / abs(ref)) <= 1e-12


def test_k_oracle_spot_agreement():
    for n, x in ((0, 0.003), (3, 1.7), (7, 55.0), (25, 199.0), (2, 1400.0)):
        ref = highprec.bessel_k_scaled(n, x)
        val = specfun.bessel_k_scaled(n, x)
        assert float(abs(Fraction(val) - ref) / ref) <= 1e-12


def test_backend_parity():
    backends = available_backends()
    if "compiled" not in backends:
        pytest.skip("compiled backend not built")
    py, cy = backends["python"], backends["compiled"]
    pts = [(n, 10 ** (-3 + 6.2 * i / 400)) for i, n in
           zip(range(400), [k % 26 for k in range(400)])]
    for n, x in pts:
        a, b = py.bessel_j_one(n, x), cy.bessel_j_one(n, x)
        assert a == b or abs(a - b) <= 1e-15 * max(abs(a), abs(b))
        ka, kb = py.bessel_k_scaled_two(n, x), cy.bessel_k_scaled_two(n, x)
        for u, v in zip(ka, kb):
            assert u == v or abs(u - v) <= 1e-15 * max(abs(u), abs(v))


def test_pure_backend_satisfies_contracts():
    py = available_backends()["python"]
    j01 = float(highprec.bessel_j_zero(0, 1))
    assert abs(py.bessel_j_one(0, j01)) <= 1e-12
    ref = float(highprec.bessel_k_scaled(4, 9.3))
    got = py.bessel_k_scaled_two(3, 9.3)[1]
    assert got == pytest.approx(ref, rel=1e-12)
