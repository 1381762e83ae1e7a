"""Command-line front end: solve, table1, sweep, validate, specfun.

Configuration is a flat JSON object with exactly the RunConfig keys; CLI
flags override file values and unknown keys are rejected.  Data files are
byte-stable across runs: timestamps live only in the run_metadata.json
sidecar.  Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, fields as dc_fields
from fractions import Fraction
from pathlib import Path

from . import __version__, magnetics, specfun, table1, units
from .errors import (ConfigError, CylwellError, DomainError, NumericalError,
                     ResolutionError)
from .moments import AngularParity
from .oracle import fdsolver, functional, highprec
from .spectrum import WellGeometry, enumerate_states, solve_radial_levels
from .units import CONSTANTS, energy_to_mev, to_atomic_units

_OUTPUT_DIR_ENV = "CYLWELL_OUTPUT_DIR"

_PARITY_BY_NAME = {
    "cos": AngularParity.COSINE,
    "sin": AngularParity.SINE,
    "avg": AngularParity.AZIMUTHAL_AVERAGE,
}

_SWEEP_AXES = ("field_kOe", "radius_nm", "height_nm", "barrier_eV")

#: frozen CSV schema (documented in the README)
SPECTRUM_COLUMNS = ("m", "k", "kz", "E_xy_meV", "E_z_meV", "E_meV",
                    "E1_meV", "E2_meV", "e1_shift_meV", "e2_shift_meV",
                    "parity", "flags")
SWEEP_COLUMNS = ("axis_value", "m", "k", "kz", "E_meV", "E1_meV", "E2_meV",
                 "e1_shift_meV", "e2_shift_meV")


@dataclass
class RunConfig:
    radius_nm: float = 2.75
    height_nm: float = 4.0
    barrier_eV: float = 1.0
    field_kOe: float = 100.0
    m_max: int = 2
    levels_per_m: int = 10
    parity: str = "avg"
    output_dir: str | None = None
    format: str = "both"
    sweep_parameter: str | None = None
    sweep_start: float | None = None
    sweep_stop: float | None = None
    sweep_steps: int | None = None

    def validate(self) -> None:
        for name in ("radius_nm", "height_nm", "barrier_eV"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)
                    and v > 0):
                raise ConfigError(f"{name} must be a positive number, "
                                  f"got {v!r}")
        if not (isinstance(self.field_kOe, (int, float))
                and math.isfinite(self.field_kOe) and self.field_kOe >= 0):
            raise ConfigError(f"field_kOe must be >= 0, got "
                              f"{self.field_kOe!r}")
        if not (isinstance(self.m_max, int) and 0 <= self.m_max <= 20):
            raise ConfigError(f"m_max must be an integer in 0..20, got "
                              f"{self.m_max!r}")
        if not (isinstance(self.levels_per_m, int)
                and 1 <= self.levels_per_m <= 200):
            raise ConfigError("levels_per_m must be an integer in 1..200, "
                              f"got {self.levels_per_m!r}")
        if self.parity not in _PARITY_BY_NAME:
            raise ConfigError(f"parity must be one of cos/sin/avg, got "
                              f"{self.parity!r}")
        if self.format not in ("csv", "json", "both"):
            raise ConfigError(f"format must be csv/json/both, got "
                              f"{self.format!r}")
        sweep_bits = (self.sweep_parameter, self.sweep_start,
                      self.sweep_stop, self.sweep_steps)
        if any(v is not None for v in sweep_bits):
            if any(v is None for v in sweep_bits):
                raise ConfigError("sweep_parameter/start/stop/steps must be "
                                  "given together")
            if self.sweep_parameter not in _SWEEP_AXES:
                raise ConfigError(f"sweep_parameter must be one of "
                                  f"{_SWEEP_AXES}, got "
                                  f"{self.sweep_parameter!r}")
            if not (isinstance(self.sweep_steps, int)
                    and self.sweep_steps >= 2):
                raise ConfigError("sweep_steps must be an integer >= 2")
            lo = min(self.sweep_start, self.sweep_stop)
            if self.sweep_parameter == "field_kOe":
                if lo < 0:
                    raise ConfigError("field sweep values must be >= 0")
            elif lo <= 0:
                raise ConfigError("geometry sweep values must be positive")

    def geometry(self) -> WellGeometry:
        return WellGeometry(
            radius=to_atomic_units(self.radius_nm, "nm"),
            height=to_atomic_units(self.height_nm, "nm"),
            barrier=to_atomic_units(self.barrier_eV, "eV"),
        )

    def field(self) -> magnetics.FieldSpec:
        return magnetics.FieldSpec.from_koe(self.field_kOe)

    def parity_enum(self) -> AngularParity:
        return _PARITY_BY_NAME[self.parity]


def load_config(path: str | None, overrides: dict) -> RunConfig:
    cfg = RunConfig()
    known = {f.name for f in dc_fields(RunConfig)}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") \
                from None
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        for key, value in raw.items():
            setattr(cfg, key, value)
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


def _resolve_outdir(cfg: RunConfig, flag_value: str | None) -> Path:
    outdir = flag_value or cfg.output_dir \
        or os.environ.get(_OUTPUT_DIR_ENV) or "out"
    path = Path(outdir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _fmt_energy(x: float) -> str:
    return f"{x:.4f}"


def _fmt_shift(x: float) -> str:
    return f"{x:.9e}"


def _metadata_lines(cfg: RunConfig, max_tail_bound: float) -> list[str]:
    return [
        f"schema: cylwell-spectrum-v1",
        f"package_version: {__version__}",
        f"constants_hash: {CONSTANTS.table_hash()}",
        f"radius_nm: {cfg.radius_nm!r}",
        f"height_nm: {cfg.height_nm!r}",
        f"barrier_eV: {cfg.barrier_eV!r}",
        f"field_kOe: {cfg.field_kOe!r}",
        f"parity: {cfg.parity}",
        f"residual_rtol: 1e-12",
        f"tail_truncation_widths: 40",
        f"max_tail_bound: {max_tail_bound:.3e}",
    ]


def _spectrum_rows(cfg: RunConfig):
    geom = cfg.geometry()
    fld = cfg.field()
    level_sets = enumerate_states(geom, cfg.m_max, cfg.levels_per_m)
    corrected = magnetics.corrected_spectrum(level_sets, geom, fld,
                                             cfg.parity_enum())
    rows = []
    max_tail = 0.0
    for level_set, levels in zip(level_sets, corrected):
        for lev in levels:
            st = lev.state
            flags = []
            if not level_set.complete:
                flags.append("incomplete")
            if fld.beyond_weak_regime:
                flags.append("field_beyond_weak_regime")
            if st.eq_sign_variant and st.eq_sign_variant != "m0":
                flags.append(f"eqsign={st.eq_sign_variant}")
            exy_mev = energy_to_mev(st.exy)
            ez_mev = energy_to_mev(st.ez)
            if lev.e2_mev > lev.e1_mev * (1.0 + 1e-14):
                raise NumericalError(
                    "row invariant violated: elliptic above circular")
            rows.append({
                "m": st.qn.m, "k": st.qn.k, "kz": st.qn.kz,
                "E_xy_meV": _fmt_energy(exy_mev),
                "E_z_meV": _fmt_energy(ez_mev),
                "E_meV": _fmt_energy(lev.e_mev),
                "E1_meV": _fmt_energy(lev.e1_mev),
                "E2_meV": _fmt_energy(lev.e2_mev),
                "e1_shift_meV": _fmt_shift(lev.e1_shift_mev),
                "e2_shift_meV": _fmt_shift(lev.e2_shift_mev),
                "parity": cfg.parity,
                "flags": ";".join(flags),
            })
            max_tail = max(max_tail, lev.moments.tail_bound)
    return rows, max_tail


def _write_spectrum(cfg: RunConfig, outdir: Path) -> list[dict]:
    rows, max_tail = _spectrum_rows(cfg)
    meta = _metadata_lines(cfg, max_tail)
    if cfg.format in ("csv", "both"):
        lines = [f"# {m}" for m in meta]
        lines.append(",".join(SPECTRUM_COLUMNS))
        for row in rows:
            lines.append(",".join(str(row[c]) for c in SPECTRUM_COLUMNS))
        (outdir / "spectrum.csv").write_text("\n".join(lines) + "\n")
    if cfg.format in ("json", "both"):
        payload = {
            "metadata": {k.split(": ")[0]: k.split(": ", 1)[1]
                         for k in meta},
            "rows": rows,
        }
        (outdir / "spectrum.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n")
    (outdir / "run_metadata.json").write_text(json.dumps({
        "command": "solve",
        "unix_time": time.time(),
        "package_version": __version__,
    }, indent=2, sort_keys=True) + "\n")
    return rows


def cmd_solve(cfg: RunConfig, outdir: Path) -> int:
    rows = _write_spectrum(cfg, outdir)
    header = f"{'m':>3} {'k':>3} {'kz':>3} {'E/meV':>12} {'E1/meV':>12} " \
             f"{'E2/meV':>12}  flags"
    print(header)
    for row in rows:
        print(f"{row['m']:>3} {row['k']:>3} {row['kz']:>3} "
              f"{row['E_meV']:>12} {row['E1_meV']:>12} {row['E2_meV']:>12}"
              f"  {row['flags']}")
    print(f"\n{len(rows)} rows -> {outdir}")
    return 0


def _table1_audit(cfg: RunConfig) -> dict:
    geom = cfg.geometry()
    fld = cfg.field()
    level_sets = enumerate_states(geom, 2, 10)
    corrected = magnetics.corrected_spectrum(level_sets, geom, fld,
                                             cfg.parity_enum())
    checks = []

    def add_check(cid, desc, ok, details):
        checks.append({"id": cid, "description": desc,
                       "status": "PASS" if ok else "FAIL",
                       "details": details})

    # (a) strict ascending order within each reference column, and within
    # each computed column
    asc_ok = True
    details = []
    for m in (0, 1, 2):
        for kind, name in ((0, "E"), (1, "E1"), (2, "E2")):
            col = table1.reference_column(m, kind)
            ok = all(a < b for a, b in zip(col, col[1:]))
            asc_ok &= ok
            if not ok:
                details.append(f"reference {name}[m={m}] not ascending")
    for m, levels in enumerate(corrected):
        es = [lev.e_mev for lev in levels]
        ok = all(a < b for a, b in zip(es, es[1:]))
        asc_ok &= ok
        if not ok:
            details.append(f"computed E[m={m}] not ascending")
    add_check("ascending_columns",
              "levels ascend within every m column (reference and computed)",
              asc_ok, details or "all columns strictly ascending")

    # (b) E increases with m within each row
    mono_ok = True
    for n in range(10):
        ref = [table1.reference_column(m, 0)[n] for m in (0, 1, 2)]
        comp = [corrected[m][n].e_mev for m in (0, 1, 2)]
        mono_ok &= ref[0] < ref[1] < ref[2]
        mono_ok &= comp[0] < comp[1] < comp[2]
    add_check("m_monotonicity",
              "unperturbed energy increases with m in every row",
              mono_ok, f"reference row 1: "
              f"{[table1.reference_column(m, 0)[0] for m in (0, 1, 2)]}")

    # (c) axial spacing: rows 1 and 2 of the reference differ by one axial
    # quantum; compare 3*E_z(1) against the printed 71 meV within 1.5
    from .spectrum import axial_energy
    spacing_mev = 3.0 * energy_to_mev(axial_energy(1, geom))
    ref_spacings = [table1.reference_column(0, 0)[1]
                    - table1.reference_column(0, 0)[0],
                    table1.reference_column(1, 0)[1]
                    - table1.reference_column(1, 0)[0]]
    c_ok = all(abs(spacing_mev - s) <= 1.5 for s in ref_spacings)
    add_check("axial_spacing",
              "computed 3*E_z(1) reproduces the reference row-1/row-2 "
              "spacing within +-1.5 meV",
              c_ok, f"computed {spacing_mev:.4f} meV vs reference "
              f"{ref_spacings}")

    # (d) absolute cell agreement within +-2 meV: reported, never fatal
    cells = []
    n_agree = 0
    for m in (0, 1, 2):
        for n in range(10):
            ref_row = table1.REFERENCE_LEVELS[m][n]
            lev = corrected[m][n]
            comp_row = (lev.e_mev, lev.e1_mev, lev.e2_mev)
            for kind, name in ((0, "E"), (1, "E1"), (2, "E2")):
                delta = comp_row[kind] - ref_row[kind]
                within = abs(delta) <= 2.0
                n_agree += within
                cells.append({
                    "m": m, "n": n + 1, "column": name,
                    "reference_meV": ref_row[kind],
                    "computed_meV": round(comp_row[kind], 4),
                    "delta_meV": round(delta, 4),
                    "within_2meV": within,
                })
    add_check("cells_within_2meV",
              "absolute cell-by-cell agreement (reported, non-fatal)",
              True, f"{n_agree}/90 cells within +-2 meV")

    diagnostics = {
        "sign_variants": {
            f"m={m}": sorted({lev.state.eq_sign_variant
                              for lev in corrected[m]})
            for m in (0, 1, 2)
        },
        "prefactor_notes": [
            "circular optimum from the symmetric base gauge is "
            "mu = -(H/2) z-bar; the printed gradient -H z-bar x-hat is "
            "twice that (it matches a Landau-type base gauge instead)",
            "printed circular correction H^2/(2c^2)(<x^2>+var z) is 4x the "
            "symmetric-gauge minimum H^2/(8c^2)(<x^2>+var z) computed here",
            "elliptic denominator structure <x^2>+<z^2>-zbar^2 matches; the "
            "printed z/x gradient components are 2x the symmetric-gauge "
            "optimum while the constant component matches exactly",
        ],
        "shift_scale_note": (
            "computed quadratic shifts at 100 kOe are of order "
            f"{corrected[0][0].e1_shift_mev:.3e} meV; the reference table "
            "prints shifts of ~2-3 meV, so cell disagreements in E1/E2 "
            "track the unperturbed-column disagreement"
        ),
        "reference_consistency_note": (
            "the reference table's own 71 meV row spacing pins E_z(1) near "
            f"{energy_to_mev(axial_energy(1, geom)):.2f} meV, which would "
            "put the implied in-plane ground energy above the infinite-well "
            "bound for the stated radius; its absolute column cannot be "
            "consistent with the stated parameters"
        ),
    }
    mandatory = all(c["status"] == "PASS" for c in checks
                    if c["id"] in ("ascending_columns", "m_monotonicity",
                                   "axial_spacing"))
    return {"checks": checks, "cells": cells, "diagnostics": diagnostics,
            "mandatory_pass": mandatory}


def cmd_table1(cfg: RunConfig, outdir: Path) -> int:
    audit = _table1_audit(cfg)
    lines = ["reference-table audit", "=" * 60]
    for check in audit["checks"]:
        lines.append(f"[{check['status']}] {check['id']}: "
                     f"{check['description']}")
        lines.append(f"         {check['details']}")
    lines.append("")
    lines.append(f"{'m':>2} {'n':>3} {'col':>4} {'ref':>6} {'computed':>12} "
                 f"{'delta':>10} within2meV")
    for cell in audit["cells"]:
        lines.append(f"{cell['m']:>2} {cell['n']:>3} {cell['column']:>4} "
                     f"{cell['reference_meV']:>6} "
                     f"{cell['computed_meV']:>12.4f} "
                     f"{cell['delta_meV']:>10.4f} {cell['within_2meV']}")
    lines.append("")
    lines.append("discrepancy diagnostics:")
    for note in audit["diagnostics"]["prefactor_notes"]:
        lines.append(f"  - {note}")
    lines.append(f"  - {audit['diagnostics']['shift_scale_note']}")
    lines.append(f"  - {audit['diagnostics']['reference_consistency_note']}")
    lines.append(f"  - matching-condition sign variants: "
                 f"{audit['diagnostics']['sign_variants']}")
    text = "\n".join(lines) + "\n"
    (outdir / "table1_audit.txt").write_text(text)
    (outdir / "table1_audit.json").write_text(
        json.dumps(audit, indent=2, sort_keys=True) + "\n")
    print(text)
    return 0


def _sweep_values(cfg: RunConfig) -> list[float]:
    n = cfg.sweep_steps
    lo, hi = cfg.sweep_start, cfg.sweep_stop
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def cmd_sweep(cfg: RunConfig, outdir: Path) -> int:
    if cfg.sweep_parameter is None:
        raise ConfigError("sweep requires sweep_parameter/start/stop/steps")
    rows = []
    values = _sweep_values(cfg)
    fit_points = []
    if cfg.sweep_parameter == "field_kOe":
        # basis states and moments do not depend on the field: solve once
        geom = cfg.geometry()
        level_sets = enumerate_states(geom, cfg.m_max, cfg.levels_per_m)
        from .moments import compute_moments
        basis = [[(st, compute_moments(st, geom, cfg.parity_enum()))
                  for st in ls.states] for ls in level_sets]
        for value in values:
            fld = magnetics.FieldSpec.from_koe(value)
            for per_m in basis:
                for st, ms in per_m:
                    e1 = magnetics.circular_correction(ms, fld)
                    e2 = magnetics.elliptic_correction(ms, fld)
                    rows.append((value, st.qn.m, st.qn.k, st.qn.kz,
                                 energy_to_mev(st.etotal),
                                 energy_to_mev(st.etotal + e1.e_h2),
                                 energy_to_mev(st.etotal + e2.e_h2),
                                 energy_to_mev(e1.e_h2),
                                 energy_to_mev(e2.e_h2)))
                    if st.qn == level_sets[0].states[0].qn and value > 0:
                        fit_points.append((value, e1.e_h2))
    else:
        for value in values:
            sub = RunConfig(**{**cfg.__dict__, cfg.sweep_parameter: value,
                               "sweep_parameter": None, "sweep_start": None,
                               "sweep_stop": None, "sweep_steps": None})
            sub.validate()
            geom = sub.geometry()
            fld = sub.field()
            level_sets = enumerate_states(geom, sub.m_max, sub.levels_per_m)
            corrected = magnetics.corrected_spectrum(level_sets, geom, fld,
                                                     sub.parity_enum())
            for levels in corrected:
                for lev in levels:
                    st = lev.state
                    rows.append((value, st.qn.m, st.qn.k, st.qn.kz,
                                 lev.e_mev, lev.e1_mev, lev.e2_mev,
                                 lev.e1_shift_mev, lev.e2_shift_mev))
    meta = [
        "schema: cylwell-sweep-v1",
        f"package_version: {__version__}",
        f"constants_hash: {CONSTANTS.table_hash()}",
        f"sweep_parameter: {cfg.sweep_parameter}",
        f"sweep_start: {cfg.sweep_start!r}",
        f"sweep_stop: {cfg.sweep_stop!r}",
        f"sweep_steps: {cfg.sweep_steps}",
    ]
    if len(fit_points) >= 2:
        # least-squares slope of log(shift) vs log(H): the quadratic law
        xs = [math.log(v) for v, _ in fit_points]
        ys = [math.log(s) for _, s in fit_points]
        n = len(xs)
        xbar = sum(xs) / n
        ybar = sum(ys) / n
        slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) \
            / sum((x - xbar) ** 2 for x in xs)
        meta.append(f"fit_exponent_shift_vs_field: {slope:.9f}")
        print(f"fitted exponent of (E1 - E) vs H: {slope:.9f}")
    lines = [f"# {m}" for m in meta]
    lines.append(",".join(SWEEP_COLUMNS))
    for row in rows:
        axis, m, k, kz, e, e1, e2, s1, s2 = row
        lines.append(",".join((
            f"{axis!r}", str(m), str(k), str(kz), _fmt_energy(e),
            _fmt_energy(e1), _fmt_energy(e2), _fmt_shift(s1),
            _fmt_shift(s2))))
    (outdir / "sweep.csv").write_text("\n".join(lines) + "\n")
    print(f"{len(rows)} sweep rows -> {outdir / 'sweep.csv'}")
    return 0


def _validate_specfun(report: dict, n_orders=(0, 1, 2, 3, 5, 8, 13, 21, 25),
                      points_per_order: int = 48) -> None:
    worst_j_rel = worst_j_abs = worst_k = 0.0
    n_pts = 0
    for n in n_orders:
        for i in range(points_per_order):
            x = 10 ** (-3 + (i + 0.37) / points_per_order
                       * (math.log10(200.0) + 3.0))
            for _ in range(60):
                jo = highprec.bessel_j(n, x)
                if x <= max(n, 1.0) or not 1e-10 < abs(jo) < 3e-3:
                    break
                x = x * 1.003 + 1e-4
            jd = specfun.bessel_j(n, x)
            if abs(jo) > 1e-10:
                worst_j_rel = max(worst_j_rel,
                                  float(abs(Fraction(jd) - jo) / abs(jo)))
            else:
                worst_j_abs = max(worst_j_abs, float(abs(Fraction(jd) - jo)))
            kd = specfun.bessel_k(n, x)
            ko = highprec.bessel_k(n, x)
            worst_k = max(worst_k, float(abs(Fraction(kd) - ko) / ko))
            n_pts += 1
    report["specfun_vs_highprec"] = {
        "points": n_pts,
        "max_rel_err_j": worst_j_rel,
        "max_abs_err_j_small": worst_j_abs,
        "max_rel_err_k": worst_k,
        "pass": worst_j_rel <= 1e-12 and worst_j_abs <= 1e-14
                and worst_k <= 1e-12,
    }


def _validate_solver_vs_fd(report: dict, cfg: RunConfig,
                           fd_points: int | None) -> None:
    geom = cfg.geometry()
    per_m = {}
    ok = True
    for m in range(min(cfg.m_max, 2) + 1):
        levels = solve_radial_levels(m, geom)
        grid = None
        if fd_points is not None:
            grid = fdsolver.FdGrid(n_points=fd_points,
                                   rho_max=geom.radius * 3.0)
        fd = fdsolver.fd_radial_spectrum(m, geom, grid)
        counts_match = len(levels) == len(fd)
        max_rel = max((abs(e - f.energy) / e
                       for e, f in zip(levels, fd)), default=0.0)
        m_ok = counts_match and max_rel <= 5e-4
        ok &= m_ok
        per_m[f"m={m}"] = {
            "count_solver": len(levels), "count_fd": len(fd),
            "max_rel_diff": max_rel, "pass": m_ok,
        }
    report["solver_vs_fd"] = {"per_m": per_m, "pass": ok}


def _validate_moments(report: dict, cfg: RunConfig) -> None:
    from .moments import compute_moments
    geom = cfg.geometry()
    sets = enumerate_states(geom, 0, 1)
    st = sets[0].states[0]
    ms1 = compute_moments(st, geom, cfg.parity_enum(), refine=1)
    ms2 = compute_moments(st, geom, cfg.parity_enum(), refine=2)
    qm = functional.quadrature_moments(st, geom)
    rel_change = max(
        abs(ms1.rho2_mean - ms2.rho2_mean) / ms2.rho2_mean,
        abs(ms1.x2_mean - ms2.x2_mean) / ms2.x2_mean,
    )
    z_err = max(abs(qm.z_mean - ms1.z_mean) / ms1.z_mean,
                abs(qm.z2_mean - ms1.z2_mean) / ms1.z2_mean)
    ok = (rel_change < 1e-9 and abs(ms1.norm_residual) <= 1e-10
          and z_err <= 1e-10)
    report["moments"] = {
        "refine_rel_change": rel_change,
        "norm_residual": ms1.norm_residual,
        "z_moment_quadrature_err": z_err,
        "pass": ok,
    }


def _validate_minimization(report: dict, cfg: RunConfig) -> None:
    from .moments import compute_moments
    geom = cfg.geometry()
    fld = magnetics.FieldSpec.from_koe(max(cfg.field_kOe, 50.0))
    ok = True
    worst = 0.0
    for m in range(min(cfg.m_max, 2) + 1):
        sets = enumerate_states(geom, m, 1)
        if not sets[m].states:
            continue
        st = sets[m].states[0]
        ms = compute_moments(st, geom, cfg.parity_enum())
        for kind, closed in (
                ("circular", magnetics.circular_correction(ms, fld)),
                ("elliptic", magnetics.elliptic_correction(ms, fld))):
            params, j_min = functional.numeric_minimize(
                st, geom, fld, kind, cfg.parity_enum())
            rel = abs(j_min - closed.e_h2) / max(closed.e_h2, 1e-300)
            scale = max(fld.magnitude * geom.height, 1e-30)
            p_err = max(abs(a - b) / scale
                        for a, b in zip(params, closed.params_opt))
            worst = max(worst, rel)
            ok &= rel <= 1e-8 and p_err <= 1e-6
    report["functional_minimization"] = {"max_rel_diff": worst, "pass": ok}


def cmd_validate(cfg: RunConfig, outdir: Path,
                 fd_points: int | None = None) -> int:
    report: dict = {}
    failures = units.verify_roundtrips()
    report["constants_roundtrip"] = {"failures": failures,
                                     "pass": not failures}
    try:
        _validate_specfun(report)
        _validate_solver_vs_fd(report, cfg, fd_points)
        _validate_moments(report, cfg)
        _validate_minimization(report, cfg)
    except (NumericalError, DomainError) as exc:
        report["aborted"] = {"error": str(exc),
                             "type": type(exc).__name__, "pass": False}
    all_pass = all(section.get("pass", False)
                   for section in report.values())
    report["all_pass"] = all_pass
    (outdir / "validate.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n")
    for name, section in report.items():
        if isinstance(section, dict):
            print(f"[{'PASS' if section.get('pass') else 'FAIL'}] {name}")
    print(f"validation {'passed' if all_pass else 'FAILED'} -> "
          f"{outdir / 'validate.json'}")
    return 0 if all_pass else 3


def cmd_specfun(kind: str, n: int, x: float, check: bool) -> int:
    try:
        if kind == "J":
            value = specfun.bessel_j(n, x)
            oracle = highprec.bessel_j(n, x) if check else None
        elif kind == "K":
            value = specfun.bessel_k(n, x)
            oracle = highprec.bessel_k(n, x) if check else None
        elif kind == "Ke":
            value = specfun.bessel_k_scaled(n, x)
            oracle = highprec.bessel_k_scaled(n, x) if check else None
        else:
            raise ConfigError(f"kind must be J, K or Ke, got {kind!r}")
    except DomainError as exc:  # bad CLI arguments are usage errors
        raise ConfigError(str(exc)) from None
    print(f"{value:#.17g}")
    if check:
        delta = float(abs(Fraction(value) - oracle))
        denom = float(abs(oracle)) or 1.0
        print(f"oracle_delta_abs: {delta:.3e}")
        print(f"oracle_delta_rel: {delta / denom:.3e}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cylwell",
                     description="Finite cylindrical quantum well: bound "
                                 "states and quadratic magnetic corrections")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file (flat RunConfig "
                                        "keys)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--format", choices=["csv", "json", "both"])
        p.add_argument("--parity", choices=["cos", "sin", "avg"])

    common(sub.add_parser("solve", help="solve the configured well and "
                                        "write the spectrum"))
    common(sub.add_parser("table1", help="audit against the embedded "
                                         "reference table"))
    common(sub.add_parser("sweep", help="sweep one parameter axis"))
    val = sub.add_parser("validate", help="run the oracle verification "
                                          "suite")
    common(val)
    val.add_argument("--fd-points", type=int, default=None,
                     help="diagnostic override of the FD grid size")
    spf = sub.add_parser("specfun", help="evaluate a kernel special "
                                         "function")
    spf.add_argument("kind", choices=["J", "K", "Ke"])
    spf.add_argument("n", type=int)
    spf.add_argument("x", type=float)
    spf.add_argument("--check", action="store_true",
                     help="also print the extended-precision oracle delta")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "specfun":
            return cmd_specfun(args.kind, args.n, args.x, args.check)
        overrides = {"format": args.format, "parity": args.parity}
        cfg = load_config(args.config, overrides)
        outdir = _resolve_outdir(cfg, args.out)
        if args.command == "solve":
            return cmd_solve(cfg, outdir)
        if args.command == "table1":
            return cmd_table1(cfg, outdir)
        if args.command == "sweep":
            return cmd_sweep(cfg, outdir)
        if args.command == "validate":
            return cmd_validate(cfg, outdir, args.fd_points)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ResolutionError as exc:
        print(f"resolution error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, DomainError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except CylwellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
