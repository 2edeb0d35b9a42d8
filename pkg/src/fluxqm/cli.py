"""Batch front end: parameter scans over every solver, emitted as CSV or JSON.

Usage:
    fluxqm <command> [--config FILE] [--set key=value]... --out PATH
           [--format csv|json] [--jobs N]

Run configurations are flat, typed key=value assignments; ``--set`` pairs
override the config file.  A scan is declared with the four keys
``scan_param``, ``scan_min``, ``scan_max``, ``scan_steps`` and produces one
output row per grid point, dispatched to a process pool but always written in
scan order with shortest round-trip float formatting, so output files are
byte-identical for any worker count.  A numeric failure at one point flags
that row and the run continues (exit code 1 at the end); malformed
configurations exit 2 before any work starts.

Commands: spectrum, phase-scan, spin-phase, dirac-scan, nonlinear, tbjj,
oracle-check.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import diracring, kerr, linearmode, oracle, phases, spinorbit, tbring
from .core import FermionConfig, ModelParams
from .errors import NoTransitionError

SCHEMA_VERSION = 1

__all__ = ["RunConfig", "UsageError", "run", "main"]


class UsageError(ValueError):
    """Configuration or command-line problem; maps to exit code 2."""


# ---------------------------------------------------------------------------
# configuration parsing


class ParamSet:
    """Typed access to a flat string-to-string parameter mapping.

    Tracks which keys were consumed so unknown (likely misspelled) keys can be
    rejected; all parse failures surface as UsageError.
    """

    def __init__(self, raw: dict):
        self.raw = dict(raw)
        self.used: set = set()

    def _fetch(self, key, default, required):
        self.used.add(key)
        if key not in self.raw:
            if required:
                raise UsageError(f"missing required parameter '{key}'")
            return None
        return self.raw[key]

    def float(self, key, default=None, required=False):
        text = self._fetch(key, default, required)
        if text is None:
            return default
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"parameter '{key}' must be a number, got {text!r}") from None

    def int(self, key, default=None, required=False):
        text = self._fetch(key, default, required)
        if text is None:
            return default
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"parameter '{key}' must be an integer, got {text!r}") from None

    def str(self, key, default=None, required=False):
        text = self._fetch(key, default, required)
        return default if text is None else text

    def int_list(self, key, default=None, required=False):
        text = self._fetch(key, default, required)
        if text is None:
            return default
        try:
            return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
        except ValueError:
            raise UsageError(f"parameter '{key}' must be a comma-separated integer list, got {text!r}") from None

    def finish(self):
        unknown = set(self.raw) - self.used
        if unknown:
            raise UsageError(f"unknown parameter(s): {', '.join(sorted(unknown))}")


def parse_config_file(path: str) -> dict:
    """Flat ``key = value`` assignments; blank lines and # comments ignored."""
    params = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    continue
                if "=" not in stripped:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value', got {stripped!r}")
                key, _, value = stripped.partition("=")
                params[key.strip()] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    return params


@dataclass(frozen=True)
class RunConfig:
    """A validated run: command, parameters, optional scan axis, output target."""

    command: str
    params: dict
    scan_param: Optional[str]
    scan_values: tuple
    out: str
    format: str
    jobs: Optional[int]


# ---------------------------------------------------------------------------
# command implementations


def _model_params(ps: ParamSet, n_particles: int) -> ModelParams:
    return ModelParams(
        g=ps.float("g", 1.0),
        g_eff=ps.float("g_eff", 1.0),
        phi=ps.float("phi", 0.0),
        n_particles=n_particles,
        hbar_omega=ps.float("hbar_omega", 1.0),
        eta=ps.float("eta", 0.0),
    )


def _parse_spectrum(params):
    ps = ParamSet(params)
    orbitals = ps.int_list("orbitals", required=True)
    spins = ps.int_list("spins")
    n_levels = ps.int("n_levels", 6)
    p = _model_params(ps, len(orbitals))
    ps.finish()
    if n_levels < 1:
        raise UsageError("n_levels must be >= 1")
    return {"p": p, "orbitals": orbitals, "spins": spins, "n_levels": n_levels}


def _columns_spectrum(parsed):
    cols = [
        ("omega_dressed", "dressed cavity quantum hbar*Omega, units of E0"),
        ("chi", "induced collective coupling"),
        ("squeeze_r", "squeeze parameter of the cavity ground state"),
        ("var_x", "ground-state variance of x = (a+a^dag)/sqrt(2)"),
    ]
    ladder = "spin-sector" if parsed["spins"] else "sector"
    for k in range(parsed["n_levels"]):
        cols.append((f"e{k}", f"{ladder} level {k} (photon index {k})"))
    return cols


def _row_spectrum(parsed):
    p = parsed["p"]
    cfg = FermionConfig(parsed["orbitals"], parsed["spins"])
    sol = linearmode.squeeze_solution(p)
    row = {
        "omega_dressed": sol.omega_dressed,
        "chi": sol.chi,
        "squeeze_r": sol.squeeze_r,
        "var_x": sol.variance_x(),
    }
    for k in range(parsed["n_levels"]):
        if parsed["spins"]:
            row[f"e{k}"] = spinorbit.spin_sector_energy(p, cfg, k)
        else:
            row[f"e{k}"] = linearmode.sector_energy(p, cfg, k)
    return row


def _parse_phase_scan(params):
    ps = ParamSet(params)
    n = ps.int("n_particles", required=True)
    m_max = ps.int("m_max", 8)
    p = _model_params(ps, n)
    ps.finish()
    return {"p": p, "m_max": m_max}


_PHASE_COLUMNS = (
    ("m_total", "total angular momentum of the ground sector"),
    ("w_kinetic", "kinetic weight sum(m_i^2) of the ground sector"),
    ("energy", "ground-sector energy at photon index 0"),
    ("displacement_a", "coherent cavity amplitude <a>"),
    ("photon_number", "displaced-vacuum photon number |<a>|^2"),
    ("phase", "balanced or polarized"),
    ("boundary_contact", "true when the optimum touches the orbital cutoff m_max"),
    ("orbitals", "occupied orbitals of the ground sector, |-separated"),
)


def _row_phase_scan(parsed):
    gs = phases.ground_state_search(parsed["p"], parsed["m_max"])
    return {
        "m_total": gs.order_m,
        "w_kinetic": gs.config.w_kinetic,
        "energy": gs.energy,
        "displacement_a": gs.displacement_a,
        "photon_number": gs.photon_number,
        "phase": gs.phase_label,
        "boundary_contact": gs.boundary_contact,
        "orbitals": "|".join(str(m) for m in gs.config.orbitals),
    }


def _summary_phase_scan(parsed, scan_param, values, rows):
    summary = _jump_summary(scan_param, values, rows, "phase")
    p = parsed["p"]
    if p.g > p.g_eff:
        summary["phi_c_closed_form"] = phases.critical_flux(p)
    return summary


def _parse_spin_phase(params):
    ps = ParamSet(params)
    n = ps.int("n_particles", required=True)
    p = _model_params(ps, n)
    ps.finish()
    return {"p": p}


_SPIN_COLUMNS = (
    ("determinant", "determinant of the (M, Sigma) stability Hessian"),
    ("eig_low", "smallest Hessian eigenvalue"),
    ("eig_high", "largest Hessian eigenvalue"),
    ("stable", "true while the balanced state is a local minimum"),
    ("soft_m", "M component of the unit soft-mode vector"),
    ("soft_sigma", "Sigma component of the unit soft-mode vector"),
    ("locking_ratio", "closed-form M/Sigma ratio of the soft mode"),
)


def _row_spin_phase(parsed):
    rep = spinorbit.hessian(parsed["p"])
    return {
        "determinant": rep.determinant,
        "eig_low": rep.eigenvalues[0],
        "eig_high": rep.eigenvalues[1],
        "stable": rep.stable,
        "soft_m": rep.soft_vector[0],
        "soft_sigma": rep.soft_vector[1],
        "locking_ratio": spinorbit.locking_ratio(parsed["p"]),
    }


def _summary_spin_phase(parsed, scan_param, values, rows):
    return _jump_summary(scan_param, values, rows, "stable")


def _parse_dirac_scan(params):
    ps = ParamSet(params)
    p = diracring.DiracParams(
        eps0=ps.float("eps0", 1.0),
        hbar_omega=ps.float("hbar_omega", 1.0),
        phi=ps.float("phi", 0.0),
        n_electrons=ps.int("n_electrons", required=True),
        degeneracy=ps.int("degeneracy", 4),
        d_eff=ps.float("d_eff", 0.0),
    )
    j_max = ps.int("j_max", p.n_electrons)
    ps.finish()
    return {"p": p, "j_max": j_max}


_DIRAC_COLUMNS = (
    ("chi", "induced chirality coupling"),
    ("chi_crit", "branch stiffness eps0 / (4 g_d)"),
    ("j_opt", "imbalance minimizing the effective energy"),
    ("energy", "effective energy at j_opt"),
    ("displacement_a", "coherent cavity amplitude <a> at j_opt"),
    ("photon_number", "displaced-vacuum photon number at j_opt"),
    ("phase", "balanced or polarized"),
)


def _row_dirac_scan(parsed):
    p = parsed["p"]
    chi = diracring.induced_coupling_dirac(p)
    j_opt = diracring.optimal_chirality(p, chi, parsed["j_max"])
    amp, photons = diracring.flux_displacement(j_opt, p)
    return {
        "chi": chi,
        "chi_crit": p.eps0 / (4.0 * p.degeneracy),
        "j_opt": j_opt,
        "energy": diracring.effective_energy(j_opt, p, chi),
        "displacement_a": amp,
        "photon_number": photons,
        "phase": "balanced" if j_opt == 0 else "polarized",
    }


def _summary_dirac_scan(parsed, scan_param, values, rows):
    summary = _jump_summary(scan_param, values, rows, "phase")
    try:
        summary["phi_c_closed_form"] = diracring.critical_flux_dirac(parsed["p"])
    except NoTransitionError:
        pass
    return summary


def _parse_nonlinear(params):
    ps = ParamSet(params)
    n = ps.int("n_particles", required=True)
    m_total = ps.int("m_total", 0)
    alpha4 = ps.float("alpha4", 0.0)
    n_levels = ps.int("n_levels", 0)
    p = _model_params(ps, n)
    ps.finish()
    if n_levels < 0:
        raise UsageError("n_levels must be >= 0")
    return {"p": p, "m_total": m_total, "alpha4": alpha4, "n_levels": n_levels}


def _columns_nonlinear(parsed):
    cols = [
        ("m_total", "fermion-sector total angular momentum"),
        ("x0", "quadrature displacement of the sector minimum"),
        ("b_eff", "curvature coefficient of the displaced potential"),
        ("beta3", "residual cubic coefficient"),
        ("v_eff", "sector offset of the displaced potential"),
        ("omega_ratio", "curvature spacing Omega(M) over the bare quantum"),
    ]
    for k in range(parsed["n_levels"]):
        cols.append((f"eps{k}", f"anharmonic level {k} of the residual block"))
    return cols


def _row_nonlinear(parsed):
    p = parsed["p"]
    sector = kerr.displacement_root(parsed["m_total"], p, parsed["alpha4"])
    row = {
        "m_total": sector.m_total,
        "x0": sector.x0,
        "b_eff": sector.b_eff,
        "beta3": sector.beta3,
        "v_eff": sector.v_eff,
        "omega_ratio": kerr.gaussian_frequency(sector) / p.hbar_omega,
    }
    if parsed["n_levels"]:
        eps = kerr.anharmonic_spectrum(sector, n_levels=parsed["n_levels"])
        for k, value in enumerate(eps):
            row[f"eps{k}"] = float(value)
    return row


def _parse_tbjj(params):
    ps = ParamSet(params)
    m_sites = ps.int("m_sites", required=True)
    occupied = ps.int_list("occupied", required=True)
    t = ps.float("t", 1.0)
    eta = ps.float("eta", 1.0)
    hbar_omega = ps.float("hbar_omega", 1.0)
    n_levels = ps.int("n_levels", 5)
    solver = ps.str("solver", "fock")
    ps.finish()
    if solver not in ("fock", "both"):
        raise UsageError(f"solver must be 'fock' or 'both', got {solver!r}")
    if n_levels < 1:
        raise UsageError("n_levels must be >= 1")
    sector = tbring.sector_constants(occupied, m_sites)
    return {"sector": sector, "t": t, "eta": eta, "hbar_omega": hbar_omega,
            "n_levels": n_levels, "solver": solver}


def _columns_tbjj(parsed):
    cols = [
        ("c_sum", "occupied-momentum cosine sum C"),
        ("s_sum", "occupied-momentum sine sum S"),
        ("e_j_amp", "sqrt(C^2 + S^2)"),
        ("delta", "phase offset atan2(S, C), radians"),
        ("e_j", "junction energy 2 t sqrt(C^2+S^2)"),
        ("e_l", "inductive energy hbar_omega / eta^2"),
        ("e_c", "charging energy hbar_omega eta^2 / 8"),
        ("beta_ratio", "double-well parameter E_J / E_L"),
    ]
    for k in range(parsed["n_levels"]):
        cols.append((f"fock_e{k}", f"sector level {k}, Fock-basis solver"))
    if parsed["solver"] == "both":
        for k in range(parsed["n_levels"]):
            cols.append((f"xrep_e{k}", f"sector level {k}, real-space solver (carries +hbar_omega/2)"))
    return cols


def _row_tbjj(parsed):
    sector, t, eta, hw = parsed["sector"], parsed["t"], parsed["eta"], parsed["hbar_omega"]
    squid = tbring.rf_squid_map(sector, t, eta, hw)
    row = {
        "c_sum": sector.c_sum,
        "s_sum": sector.s_sum,
        "e_j_amp": sector.e_j_amp,
        "delta": sector.delta,
        "e_j": squid.e_j,
        "e_l": squid.e_l,
        "e_c": squid.e_c,
        "beta_ratio": squid.beta_ratio,
    }
    fock = tbring.sector_spectrum_fock(sector, t, eta, hw, n_levels=parsed["n_levels"])
    for k, value in enumerate(fock):
        row[f"fock_e{k}"] = float(value)
    if parsed["solver"] == "both":
        xrep = tbring.sector_spectrum_xrep(sector, t, eta, hw, n_levels=parsed["n_levels"])
        for k, value in enumerate(xrep):
            row[f"xrep_e{k}"] = float(value)
    return row


# oracle-check: a fixed self-test suite comparing closed forms and brute force.
_ORACLE_SUITE = tuple(
    (orbitals, ratio, phi)
    for orbitals in ((0,), (2,), (0, 1), (-1, 0, 1), (0, 1, 2))
    for ratio in (0.5, 2.0)
    for phi in (0.0, 0.8)
)


def _parse_oracle_check(params):
    ps = ParamSet(params)
    case = ps.int("case", -1)
    tol = ps.float("tol", 1e-8)
    cutoff = ps.int("cutoff", 300)
    n_levels = ps.int("n_levels", 6)
    hbar_omega = ps.float("hbar_omega", 1.0)
    ps.finish()
    return {"case": case, "tol": tol, "cutoff": cutoff, "n_levels": n_levels,
            "hbar_omega": hbar_omega}


_ORACLE_COLUMNS = (
    ("case", "index into the built-in comparison suite"),
    ("n_particles", "particle number of the checked sector"),
    ("g", "bare orbital scale"),
    ("g_eff", "effective orbital scale"),
    ("phi", "flux amplitude"),
    ("orbitals", "occupied orbitals, |-separated"),
    ("max_rel_error", "worst per-level relative deviation, closed form vs brute force"),
    ("passed", "true when max_rel_error <= tol"),
)


def _row_oracle_check(parsed):
    orbitals, ratio, phi = _ORACLE_SUITE[parsed["case"]]
    cfg = FermionConfig(orbitals)
    p = ModelParams(g=ratio, g_eff=1.0, phi=phi, n_particles=cfg.n_particles,
                    hbar_omega=parsed["hbar_omega"])
    analytic = [linearmode.sector_energy(p, cfg, k) for k in range(parsed["n_levels"])]
    report = oracle.oracle_spectrum(p, cfg, cutoff=parsed["cutoff"],
                                    n_levels=parsed["n_levels"], check_convergence=False)
    comparison = oracle.compare_spectra(analytic, report, parsed["tol"], scale=p.hbar_omega)
    return {
        "case": parsed["case"],
        "n_particles": cfg.n_particles,
        "g": p.g,
        "g_eff": p.g_eff,
        "phi": p.phi,
        "orbitals": "|".join(str(m) for m in cfg.orbitals),
        "max_rel_error": comparison.max_rel_error,
        "passed": comparison.passed,
        "_failed": not comparison.passed,
    }


@dataclass(frozen=True)
class _Command:
    parse: Callable
    columns: Callable
    row: Callable
    summary: Optional[Callable] = None
    integer_scan: frozenset = frozenset()
    fixed_cases: Optional[Callable] = None


_COMMANDS = {
    "spectrum": _Command(_parse_spectrum, _columns_spectrum, _row_spectrum),
    "phase-scan": _Command(_parse_phase_scan, lambda parsed: list(_PHASE_COLUMNS),
                           _row_phase_scan, _summary_phase_scan),
    "spin-phase": _Command(_parse_spin_phase, lambda parsed: list(_SPIN_COLUMNS),
                           _row_spin_phase, _summary_spin_phase),
    "dirac-scan": _Command(_parse_dirac_scan, lambda parsed: list(_DIRAC_COLUMNS),
                           _row_dirac_scan, _summary_dirac_scan),
    "nonlinear": _Command(_parse_nonlinear, _columns_nonlinear, _row_nonlinear,
                          integer_scan=frozenset({"m_total", "n_particles"})),
    "tbjj": _Command(_parse_tbjj, _columns_tbjj, _row_tbjj),
    "oracle-check": _Command(_parse_oracle_check, lambda parsed: list(_ORACLE_COLUMNS),
                             _row_oracle_check,
                             fixed_cases=lambda parsed: list(range(len(_ORACLE_SUITE)))),
}


# ---------------------------------------------------------------------------
# scan driver


def _eval_point(task):
    """Worker entry: returns the computed row, or a flagged stub on failure."""
    command, params_items = task
    cmd = _COMMANDS[command]
    try:
        parsed = cmd.parse(dict(params_items))
        row = cmd.row(parsed)
        row.setdefault("_status", "ok")
        return row
    except UsageError:
        raise  # configuration bugs must not be silently flagged
    except Exception as exc:
        return {"_status": f"error: {type(exc).__name__}: {exc}"}


def _jump_summary(scan_param, values, rows, key):
    """Bracket of the first change in a label column between adjacent good rows."""
    summary = {}
    for (v0, r0), (v1, r1) in zip(zip(values, rows), zip(values[1:], rows[1:])):
        if r0["status"] != "ok" or r1["status"] != "ok":
            continue
        if r0.get(key) != r1.get(key):
            summary["jump_column"] = key
            summary[f"jump_{scan_param}_low"] = v0
            summary[f"jump_{scan_param}_high"] = v1
            break
    return summary


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(fh, config, columns, rows, summary):
    fh.write("# fluxqm output\n")
    fh.write(f"# schema_version = {SCHEMA_VERSION}\n")
    fh.write(f"# command = {config.command}\n")
    for key in sorted(config.params):
        fh.write(f"# param {key} = {config.params[key]}\n")
    if config.scan_param is not None:
        fh.write(
            f"# scan {config.scan_param}: {_format_cell(config.scan_values[0])}"
            f" .. {_format_cell(config.scan_values[-1])}, {len(config.scan_values)} points\n"
        )
    for name, desc in columns:
        fh.write(f"# column {name}: {desc}\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([name for name, _ in columns])
    for row in rows:
        writer.writerow([_format_cell(row.get(name)) for name, _ in columns])
    for key in summary:
        fh.write(f"# summary {key} = {_format_cell(summary[key])}\n")


def _write_json(fh, config, columns, rows, summary):
    doc = {
        "meta": {
            "schema_version": SCHEMA_VERSION,
            "command": config.command,
            "params": {key: config.params[key] for key in sorted(config.params)},
            "scan": None
            if config.scan_param is None
            else {
                "param": config.scan_param,
                "min": config.scan_values[0],
                "max": config.scan_values[-1],
                "steps": len(config.scan_values),
            },
            "columns": [{"name": name, "description": desc} for name, desc in columns],
            "summary": summary,
        },
        "rows": [{name: row.get(name) for name, _ in columns} for row in rows],
    }
    json.dump(doc, fh, indent=2)
    fh.write("\n")


def build_run_config(command, params, out, fmt, jobs) -> RunConfig:
    """Validate the scan axis and freeze the run description."""
    if command not in _COMMANDS:
        raise UsageError(f"unknown command {command!r}; choose from {', '.join(sorted(_COMMANDS))}")
    params = dict(params)
    scan_param = params.pop("scan_param", None)
    scan_min = params.pop("scan_min", None)
    scan_max = params.pop("scan_max", None)
    scan_steps = params.pop("scan_steps", None)
    cmd = _COMMANDS[command]
    if cmd.fixed_cases is not None and scan_param is not None:
        raise UsageError(f"command {command!r} runs a fixed suite and does not accept a scan")
    if scan_param is None:
        if any(v is not None for v in (scan_min, scan_max, scan_steps)):
            raise UsageError("scan_min/scan_max/scan_steps require scan_param")
        values = ()
    else:
        if scan_min is None or scan_max is None or scan_steps is None:
            raise UsageError("a scan needs all of scan_param, scan_min, scan_max, scan_steps")
        try:
            lo, hi, steps = float(scan_min), float(scan_max), int(scan_steps)
        except ValueError:
            raise UsageError("scan_min/scan_max must be numbers and scan_steps an integer") from None
        if steps < 1:
            raise UsageError(f"scan_steps must be >= 1, got {steps}")
        if lo > hi:
            raise UsageError(f"scan_min must not exceed scan_max, got {lo} > {hi}")
        grid = np.linspace(lo, hi, steps)
        if scan_param in cmd.integer_scan:
            values = tuple(int(round(v)) for v in grid)
        else:
            values = tuple(float(v) for v in grid)
    if fmt not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {fmt!r}")
    if jobs is not None and jobs < 1:
        raise UsageError(f"jobs must be >= 1, got {jobs}")
    return RunConfig(command=command, params=params, scan_param=scan_param,
                     scan_values=values, out=out, format=fmt, jobs=jobs)


def _point_params(config: RunConfig):
    """Merged parameter dict for every scan point (or the single point)."""
    cmd = _COMMANDS[config.command]
    if cmd.fixed_cases is not None:
        parsed = cmd.parse(config.params)  # validates user params
        cases = cmd.fixed_cases(parsed)
        return [dict(config.params, case=repr(c)) for c in cases], list(cases)
    if config.scan_param is None:
        return [dict(config.params)], [None]
    merged = []
    for value in config.scan_values:
        merged.append(dict(config.params, **{config.scan_param: repr(value)}))
    return merged, list(config.scan_values)


def run(config: RunConfig) -> int:
    """Execute the scan and write the output file.  Returns the exit code."""
    cmd = _COMMANDS[config.command]
    points, values = _point_params(config)
    # validate configuration on the first point before spawning any workers
    first_parsed = cmd.parse(points[0])
    columns = list(cmd.columns(first_parsed))
    if config.scan_param is not None and config.scan_param not in {name for name, _ in columns}:
        columns.insert(0, (config.scan_param, f"scan value of {config.scan_param}"))
    columns.append(("status", "ok, or the error that flagged this point"))

    tasks = [(config.command, tuple(sorted(p.items()))) for p in points]
    jobs = config.jobs if config.jobs is not None else (os.cpu_count() or 1)
    if jobs == 1 or len(tasks) == 1:
        results = [_eval_point(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_eval_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))

    rows = []
    for value, row in zip(values, results):
        if config.scan_param is not None and config.scan_param not in row:
            row[config.scan_param] = value
        row["status"] = row.pop("_status")
        rows.append(row)

    summary = {}
    if cmd.summary is not None and config.scan_param is not None and len(rows) > 1:
        summary = cmd.summary(first_parsed, config.scan_param, values, rows) or {}

    with open(config.out, "w", encoding="utf-8", newline="") as fh:
        if config.format == "csv":
            _write_csv(fh, config, columns, rows, summary)
        else:
            _write_json(fh, config, columns, rows, summary)

    failed = any(row["status"] != "ok" or row.get("_failed") for row in rows)
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fluxqm",
        description="Parameter scans over exactly solvable flux-coupled ring models.",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", help="flat key = value run configuration file")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one configuration key (repeatable)")
    parser.add_argument("--out", required=True, help="output file path")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: available parallelism)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        params = parse_config_file(args.config) if args.config else {}
        for pair in args.set:
            if "=" not in pair:
                raise UsageError(f"--set expects KEY=VALUE, got {pair!r}")
            key, _, value = pair.partition("=")
            params[key.strip()] = value.strip()
        config = build_run_config(args.command, params, args.out, args.format, args.jobs)
        return run(config)
    except UsageError as exc:
        print(f"fluxqm: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # unexpected hard failure: diagnostic, nonzero exit
        print(f"fluxqm: failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
