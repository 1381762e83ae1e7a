"""Acceptance criteria, one test per criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines; every tolerance is pinned here and nowhere else.
"""

import json
import math
import time
from fractions import Fraction

import pytest

from cylwell import (energy_to_mev, first_order_correction, specfun,
                     to_atomic_units)
from cylwell.cli import _table1_audit, RunConfig, main as cli_main
from cylwell.magnetics import (FieldSpec, GaugeFamily, circular_correction,
                               elliptic_correction, functional_j)
from cylwell.moments import compute_moments
from cylwell.oracle import highprec
from cylwell.oracle.fdsolver import fd_radial_spectrum
from cylwell.oracle.functional import numeric_minimize
from cylwell.spectrum import (WellGeometry, axial_energy, enumerate_states,
                              solve_radial_levels)

FIELD_100 = FieldSpec.from_koe(100.0)


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {criterion} failed: {detail}"


def _certification_grid(points_per_order: int = 385):
    """Deterministic log grid over orders 0..25, x in (1e-3, 200].

    Points landing in the ill-conditioned bands around oscillatory-region
    zeros of J_n (1e-10 < |J| < 3e-3, where no double-precision value can
    carry 12 relative digits) are deterministically nudged off the zero;
    the nudge decision uses only the oracle.
    """
    span = math.log10(200.0) + 3.0
    for n in range(26):
        for i in range(points_per_order):
            x = 10 ** (-3.0 + (i + 0.5) / points_per_order * span)
            for _ in range(60):
                jo = highprec.bessel_j(n, x)
                if x <= max(n, 1.0) or not 1e-10 < abs(jo) < 3e-3:
                    break
                x = min(x * 1.003 + 1e-4, 200.0) if x < 199.0 \
                    else x * 0.997
            yield n, x, jo


def test_criterion_1_specfun_certification():
    t0 = time.perf_counter()
    n_pts = 0
    worst_j_rel = worst_j_abs = worst_k = 0.0
    for n, x, jo in _certification_grid():
        n_pts += 1
        jd = Fraction(specfun.bessel_j(n, x))
        if abs(jo) > 1e-10:
            worst_j_rel = max(worst_j_rel, float(abs(jd - jo) / abs(jo)))
        else:
            worst_j_abs = max(worst_j_abs, float(abs(jd - jo)))
        kd = Fraction(specfun.bessel_k(n, x))
        ko = highprec.bessel_k(n, x)
        worst_k = max(worst_k, float(abs(kd - ko) / ko))
    elapsed = time.perf_counter() - t0
    ok = (n_pts >= 10000 and worst_j_rel <= 1e-12 and worst_j_abs <= 1e-14
          and worst_k <= 1e-12 and elapsed < 60.0)
    _report("1 special-function certification", ok,
            f"{n_pts} pts, J rel {worst_j_rel:.2e}, J abs {worst_j_abs:.2e},"
            f" K rel {worst_k:.2e}, {elapsed:.1f}s")


def test_criterion_2_eigenvalue_oracle_equivalence(paper_geom):
    t0 = time.perf_counter()
    worst = 0.0
    counts = []
    for m in (0, 1, 2):
        levels = solve_radial_levels(m, paper_geom)
        fd = fd_radial_spectrum(m, paper_geom)
        counts.append((len(levels), len(fd)))
        for e, f in zip(levels, fd):
            worst = max(worst, abs(e - f.energy) / e)
    elapsed = time.perf_counter() - t0
    ok = all(a == b for a, b in counts) and worst <= 5e-4 and elapsed < 30.0
    _report("2 eigenvalue oracle equivalence", ok,
            f"counts {counts}, max rel {worst:.2e}, {elapsed:.1f}s")


def test_criterion_3_infinite_barrier_limit(strong_geom):
    worst = 0.0
    for m, k in ((0, 1), (0, 2), (1, 1), (2, 1)):
        levels = solve_radial_levels(m, strong_geom)
        u = math.sqrt(2.0 * levels[k - 1]) * strong_geom.radius
        jmk = float(highprec.bessel_j_zero(m, k))
        worst = max(worst, abs(u - jmk) / jmk)
    _report("3 infinite-barrier limit", worst <= 1e-3,
            f"max |kin R - j_mk|/j_mk = {worst:.2e}")


def test_criterion_4_axial_spacing(paper_geom):
    spacing = 3.0 * energy_to_mev(axial_energy(1, paper_geom))
    delta = abs(spacing - 71.0)
    _report("4 axial closed form vs reference spacing", delta <= 1.5,
            f"3*E_z(1) = {spacing:.3f} meV, |delta - 71| = {delta:.3f}")


def test_criterion_5_table_audit():
    audit = _table1_audit(RunConfig())
    by_id = {c["id"]: c for c in audit["checks"]}
    ordering_ok = (by_id["ascending_columns"]["status"] == "PASS"
                   and by_id["m_monotonicity"]["status"] == "PASS")
    n_within = sum(1 for c in audit["cells"] if c["within_2meV"])
    # absolute agreement is measured and reported, never asserted: the
    # reference table is internally inconsistent with its stated parameters
    _report("5 reference-table audit", ordering_ok,
            f"ordering checks PASS; {n_within}/90 cells within +-2 meV "
            f"(reported, non-fatal)")


def test_criterion_6_variational_suite(paper_geom):
    sets = enumerate_states(paper_geom, 2, 10)
    double_field = FieldSpec(magnitude=2.0 * FIELD_100.magnitude)
    n_states = 0
    worst_closed_vs_numeric = 0.0
    for level_set in sets:
        for st in level_set.states:
            n_states += 1
            ms = compute_moments(st, paper_geom)
            bare = functional_j(ms, FIELD_100, GaugeFamily.elliptic(0.0, 0.0))
            c = circular_correction(ms, FIELD_100)
            e = elliptic_correction(ms, FIELD_100)
            # (a) strict variational ordering (x2 never equals var here)
            assert e.e_h2 < c.e_h2 < bare, st.qn
            # (b) exact quadratic field scaling
            for fn, val in ((circular_correction, c.e_h2),
                            (elliptic_correction, e.e_h2)):
                ratio = fn(ms, double_field).e_h2 / val
                assert abs(ratio - 4.0) <= 4e-12, st.qn
            # (c) closed forms vs numeric minimization of the quadrature
            # functional
            for kind, closed in (("circular", c), ("elliptic", e)):
                _, j_min = numeric_minimize(st, paper_geom, FIELD_100, kind)
                rel = abs(j_min - closed.e_h2) / closed.e_h2
                worst_closed_vs_numeric = max(worst_closed_vs_numeric, rel)
                assert rel <= 1e-8, (st.qn, kind, rel)
            # (d) the linear correction is identically zero
            assert first_order_correction(st, FIELD_100) == 0.0
            # (e) z-origin translation leaves both corrections unchanged
            shifted = ms.translated(0.37 * paper_geom.height)
            assert circular_correction(shifted, FIELD_100).e_h2 \
                == pytest.approx(c.e_h2, rel=1e-12)
            assert elliptic_correction(shifted, FIELD_100).e_h2 \
                == pytest.approx(e.e_h2, rel=1e-12)
    _report("6 variational property suite", n_states == 30,
            f"{n_states} states; worst closed-vs-numeric rel "
            f"{worst_closed_vs_numeric:.2e}")


def test_criterion_7_moments(paper_geom):
    from cylwell.oracle.functional import quadrature_moments
    st = enumerate_states(paper_geom, 0, 1)[0].states[0]
    ms1 = compute_moments(st, paper_geom, refine=1)
    ms2 = compute_moments(st, paper_geom, refine=2)
    qm = quadrature_moments(st, paper_geom)
    z_err = max(abs(qm.z_mean - ms1.z_mean) / ms1.z_mean,
                abs(qm.z2_mean - ms1.z2_mean) / ms1.z2_mean)
    refine_change = max(
        abs(getattr(ms1, f) - getattr(ms2, f)) / abs(getattr(ms2, f))
        for f in ("z_mean", "z2_mean", "rho2_mean", "x2_mean"))
    ok = (z_err <= 1e-10 and abs(ms1.norm_residual) <= 1e-10
          and refine_change < 1e-9)
    _report("7 moments", ok,
            f"z-quadrature err {z_err:.2e}, norm residual "
            f"{ms1.norm_residual:.2e}, refine change {refine_change:.2e}")


def test_criterion_8_performance(tmp_path):
    t0 = time.perf_counter()
    assert cli_main(["solve", "--out", str(tmp_path / "solve")]) == 0
    t_solve = time.perf_counter() - t0
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({
        "sweep_parameter": "field_kOe", "sweep_start": 0.0,
        "sweep_stop": 100.0, "sweep_steps": 1000}))
    t0 = time.perf_counter()
    assert cli_main(["sweep", "--config", str(cfg),
                     "--out", str(tmp_path / "sweep")]) == 0
    t_sweep = time.perf_counter() - t0
    ok = t_solve < 1.0 and t_sweep < 10.0
    _report("8 performance", ok,
            f"solve {t_solve:.2f}s (<1s), 1000-point field sweep "
            f"{t_sweep:.2f}s (<10s)")


def test_criterion_9_determinism(tmp_path):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    assert cli_main(["solve", "--out", str(d1)]) == 0
    assert cli_main(["solve", "--out", str(d2)]) == 0
    same = ((d1 / "spectrum.csv").read_bytes()
            == (d2 / "spectrum.csv").read_bytes()
            and (d1 / "spectrum.json").read_bytes()
            == (d2 / "spectrum.json").read_bytes())
    _report("9 determinism", same,
            "two consecutive solve runs are byte-identical")
