"""Sweep execution: (t, T) surfaces of S and E_N, ESD reports, asymptotics.

Output formatting is centralized here so the CLI produces byte-identical
files for identical configs regardless of whether the records were computed
in-process or fetched from the service: floats are printed with 12
significant digits and '.' as the decimal separator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig, initial_state, phys_params, time_grid
from .dynamics import _propagate_sigma, rk4_samples, steady_state
from .entanglement import (
    _simon_terms,
    asymptotic_log_negativity,
    asymptotic_simon,
    esd_time,
    symplectic_spectrum_pt,
)
from .errors import ConfigError
from .model import build_drift, build_thermal_diffusion, validate_cp
from .states import CovarianceState

__all__ = [
    "SweepRecord",
    "SweepResult",
    "CSV_HEADER",
    "RK4_CHECK_TOL",
    "run_sweep",
    "run_evolve",
    "run_esd",
    "run_asymptote",
    "run_validate",
    "format_csv",
    "format_report",
]

CSV_HEADER = "t,T,S,nu_minus,E_N,uncertainty_residual,is_entangled"
RK4_CHECK_TOL = 1e-5
_ESD_TOL = 1e-6


@dataclass(frozen=True)
class SweepRecord:
    """One (t, T) grid point of a sweep."""

    t: float
    T: float
    S: float
    nu_minus: float
    E_N: float
    uncertainty_residual: float
    is_entangled: bool


@dataclass(frozen=True)
class SweepResult:
    records: tuple[SweepRecord, ...]
    rk4_max_s_diff: float | None


def _record_at(t: float, temperature: float, sigma: np.ndarray) -> SweepRecord:
    state = CovarianceState(sigma)
    simon = _simon_terms(state.sigma)
    nu_minus = symplectic_spectrum_pt(state).nu_minus
    e_n = -math.log2(2.0 * nu_minus)
    return SweepRecord(
        t=float(t),
        T=float(temperature),
        S=simon.value,
        nu_minus=nu_minus,
        E_N=e_n,
        uncertainty_residual=state.residual,
        is_entangled=e_n > 0.0,
    )


def run_sweep(cfg: ScenarioConfig) -> SweepResult:
    """Evaluate the configured (t, T) grid; temperature-major record order.

    The steady state is solved once per temperature. With rk4_check on,
    the same grid is integrated by RK4 and the worst |S_closed - S_rk4|
    over the whole sweep is reported alongside the records.
    """
    s0 = initial_state(cfg)
    grid = time_grid(cfg)
    records: list[SweepRecord] = []
    rk4_max: float | None = None

    for temperature in cfg.T_list:
        p = phys_params(cfg, temperature)
        drift = build_drift(p)
        diffusion = build_thermal_diffusion(p)
        sigma_inf = steady_state(drift, diffusion)

        sigmas = [_propagate_sigma(s0.sigma, sigma_inf, p, float(t)) for t in grid]
        for t, sigma in zip(grid, sigmas):
            records.append(_record_at(float(t), temperature, sigma))

        if cfg.rk4_check:
            oracle = rk4_samples(s0.sigma, drift, diffusion, [float(t) for t in grid], cfg.dt)
            # a diverged integration (too coarse dt) must fail the check,
            # not crash the sweep
            worst = max(
                abs(_simon_terms(a).value - _simon_terms(b).value)
                if np.isfinite(b).all()
                else math.inf
                for a, b in zip(sigmas, oracle)
            )
            rk4_max = worst if rk4_max is None else max(rk4_max, worst)

    return SweepResult(records=tuple(records), rk4_max_s_diff=rk4_max)


def run_evolve(cfg: ScenarioConfig) -> SweepResult:
    """Single-temperature trajectory; requires exactly one entry in T_list."""
    if len(cfg.T_list) != 1:
        raise ConfigError(
            f"evolve needs exactly one temperature, got {len(cfg.T_list)}; "
            "use sweep for surfaces"
        )
    return run_sweep(cfg)


def _scenario_dump(cfg: ScenarioConfig) -> dict:
    return cfg.model_dump(by_alias=True, exclude_none=True)


def run_esd(cfg: ScenarioConfig, tol: float = _ESD_TOL) -> dict:
    """Entanglement-sudden-death report, one result object per temperature.

    Refuses separable initial states (their S(0) is not negative).
    """
    s0 = initial_state(cfg)
    results = []
    for temperature in cfg.T_list:
        p = phys_params(cfg, temperature)
        found = esd_time(s0, p, t_max=cfg.t_max, tol=tol)
        results.append(
            {
                "T": temperature,
                "esd_time": found.time,
                "bracket": list(found.bracket) if found.bracket else None,
                "iterations": found.iterations,
                "crossings": list(found.crossings),
            }
        )
    return {
        "schema": 1,
        "scenario": _scenario_dump(cfg),
        "tol": tol,
        "results": results,
    }


def run_asymptote(cfg: ScenarioConfig) -> dict:
    """Asymptotic report: steady-state covariances, S(inf), E_N(inf) per T."""
    results = []
    for temperature in cfg.T_list:
        p = phys_params(cfg, temperature)
        sigma_inf = steady_state(build_drift(p), build_thermal_diffusion(p))
        diag = np.diag(sigma_inf)
        off_diag = float(np.max(np.abs(sigma_inf - np.diag(diag))))
        s_inf = asymptotic_simon(p)
        e_n_inf = asymptotic_log_negativity(p)
        results.append(
            {
                "T": temperature,
                "sigma_xx": float(diag[0]),
                "sigma_pxpx": float(diag[1]),
                "sigma_yy": float(diag[2]),
                "sigma_pypy": float(diag[3]),
                "max_off_diagonal": off_diag,
                "S_inf": s_inf,
                "E_N_inf": e_n_inf,
                "separable": s_inf >= 0.0,
            }
        )
    return {"schema": 1, "scenario": _scenario_dump(cfg), "results": results}


def run_validate(cfg: ScenarioConfig, strict: bool = False) -> dict:
    """Complete-positivity report for the thermal diffusion at each T."""
    results = []
    for temperature in cfg.T_list:
        p = phys_params(cfg, temperature)
        report = validate_cp(build_thermal_diffusion(p), p.lam, strict=strict)
        entry = {
            "T": temperature,
            "inequalities": [
                {"name": e.name, "residual": e.residual, "passed": e.passed}
                for e in report.entries
            ],
            "passed": report.passed,
        }
        if report.strict_check is not None:
            entry["strict_min_eigenvalue"] = report.strict_check.min_eigenvalue
        results.append(entry)
    return {
        "schema": 1,
        "scenario": _scenario_dump(cfg),
        "strict": strict,
        "all_passed": all(r["passed"] for r in results),
        "results": results,
    }


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def format_csv(records) -> str:
    """Render sweep records as CSV with a one-line header."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    _fmt(r.t),
                    _fmt(r.T),
                    _fmt(r.S),
                    _fmt(r.nu_minus),
                    _fmt(r.E_N),
                    _fmt(r.uncertainty_residual),
                    "true" if r.is_entangled else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"


def format_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
