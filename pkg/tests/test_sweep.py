import json
import math

import numpy as np
import pytest

from gaussentangle.config import ScenarioConfig
from gaussentangle.errors import ConfigError, PhysicsError
from gaussentangle.sweep import (
    CSV_HEADER,
    RK4_CHECK_TOL,
    format_csv,
    format_report,
    run_asymptote,
    run_esd,
    run_evolve,
    run_sweep,
    run_validate,
)

from oracles import thermal_coth_mp


def make_cfg(**overrides):
    doc = {
        "lambda": 0.1,
        "omega1": 1.0,
        "omega2": 3.0,
        "state": {"type": "two_mode_squeezed", "r": 2.0},
        "t_max": 25.0,
        "steps": 40,
        "T_list": [0.0, 1.0],
    }
    doc.update(overrides)
    return ScenarioConfig.model_validate(doc)


class TestRunSweep:
    def test_record_count_and_order(self):
        result = run_sweep(make_cfg())
        assert len(result.records) == 80
        assert [r.T for r in result.records[:40]] == [0.0] * 40
        assert [r.T for r in result.records[40:]] == [1.0] * 40
        times = [r.t for r in result.records[:40]]
        assert times == sorted(times)

    def test_initial_records_temperature_independent(self):
        result = run_sweep(make_cfg())
        first_cold = result.records[0]
        first_hot = result.records[40]
        assert first_cold.t == first_hot.t == 0.0
        assert first_cold.S == first_hot.S
        assert first_cold.E_N == first_hot.E_N

    def test_entangled_flag_consistency(self):
        for r in run_sweep(make_cfg()).records:
            assert r.is_entangled == (r.E_N > 0.0)

    def test_separable_scenario_stays_separable(self):
        cfg = make_cfg(state={"type": "single_mode_squeezed", "r": 0.5},
                       T_list=[0.0, 1.0, 5.0])
        for record in run_sweep(cfg).records:
            assert record.S >= -1e-10

    def test_fig2_transition_to_separable(self):
        cfg = make_cfg(T_list=[1.0], steps=120)
        values = [r.S for r in run_sweep(cfg).records]
        assert values[0] < 0.0
        assert values[-1] > 0.0

    def test_rk4_check_small_grid(self):
        cfg = make_cfg(steps=12, t_max=6.0, T_list=[1.0], rk4_check=True)
        result = run_sweep(cfg)
        assert result.rk4_max_s_diff is not None
        assert result.rk4_max_s_diff <= RK4_CHECK_TOL

    def test_no_rk4_by_default(self):
        assert run_sweep(make_cfg(steps=5)).rk4_max_s_diff is None

    def test_physicality_column(self):
        for record in run_sweep(make_cfg(steps=25)).records:
            assert record.uncertainty_residual >= -1e-8


class TestRunEvolve:
    def test_single_temperature_ok(self):
        result = run_evolve(make_cfg(T_list=[1.0], steps=10))
        assert len(result.records) == 10

    def test_multiple_temperatures_rejected(self):
        with pytest.raises(ConfigError, match="one temperature"):
            run_evolve(make_cfg())


class TestRunEsd:
    def test_fig2_report(self):
        report = run_esd(make_cfg(T_list=[0.0, 1.0, 2.0], t_max=100.0))
        assert report["schema"] == 1
        assert report["scenario"]["lambda"] == 0.1
        by_t = {entry["T"]: entry for entry in report["results"]}
        assert by_t[0.0]["esd_time"] is None
        assert by_t[1.0]["esd_time"] is not None
        assert by_t[2.0]["esd_time"] < by_t[1.0]["esd_time"]

    def test_separable_initial_refused(self):
        cfg = make_cfg(state={"type": "single_mode_squeezed", "r": 1.0})
        with pytest.raises(PhysicsError, match="separable"):
            run_esd(cfg)

    def test_vacuum_refused(self):
        cfg = make_cfg(state={"type": "two_mode_squeezed", "r": 0.0})
        with pytest.raises(PhysicsError, match="separable"):
            run_esd(cfg)


class TestRunAsymptote:
    def test_reference_values(self):
        report = run_asymptote(make_cfg(T_list=[0.0, 1.0]))
        cold, hot = report["results"]
        assert cold["T"] == 0.0
        assert cold["S_inf"] == 0.0
        assert cold["E_N_inf"] == 0.0
        assert hot["sigma_xx"] == pytest.approx(0.5 * thermal_coth_mp(1.0, 1.0), rel=1e-12)
        assert hot["sigma_pypy"] == pytest.approx(1.5 * thermal_coth_mp(3.0, 1.0), rel=1e-12)
        assert hot["S_inf"] == pytest.approx(0.05076686772381301, rel=1e-10)
        assert hot["E_N_inf"] == pytest.approx(-0.14377398525366298, rel=1e-10)
        assert all(entry["separable"] for entry in report["results"])

    def test_off_diagonal_reported_small(self):
        report = run_asymptote(make_cfg(T_list=[2.0]))
        assert report["results"][0]["max_off_diagonal"] <= 1e-10


class TestRunValidate:
    def test_thermal_passes(self):
        report = run_validate(make_cfg(T_list=[0.0, 1.0, 10.0]))
        assert report["all_passed"]
        for entry in report["results"]:
            assert len(entry["inequalities"]) == 6
            assert entry["passed"]

    def test_strict_mode_included(self):
        report = run_validate(make_cfg(T_list=[1.0]), strict=True)
        assert report["strict"] is True
        assert "strict_min_eigenvalue" in report["results"][0]
        assert report["all_passed"]


class TestFormatting:
    def test_csv_header_exact(self):
        assert CSV_HEADER == "t,T,S,nu_minus,E_N,uncertainty_residual,is_entangled"

    def test_csv_shape_and_booleans(self):
        result = run_sweep(make_cfg(steps=3, T_list=[1.0]))
        text = format_csv(result.records)
        lines = text.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 4
        first = lines[1].split(",")
        assert len(first) == 7
        assert first[6] in ("true", "false")

    def test_csv_deterministic(self):
        cfg = make_cfg(steps=20)
        a = format_csv(run_sweep(cfg).records)
        b = format_csv(run_sweep(cfg).records)
        assert a == b

    def test_csv_12_significant_digits(self):
        result = run_sweep(make_cfg(steps=2, T_list=[1.0]))
        row = format_csv(result.records).strip().split("\n")[2].split(",")
        # S at t_max carries a full mantissa
        assert len(row[2].lstrip("-").replace(".", "").replace("e", "").lstrip("0")) >= 10

    def test_report_roundtrips_as_json(self):
        report = run_asymptote(make_cfg(T_list=[1.0]))
        text = format_report(report)
        assert text.endswith("\n")
        assert json.loads(text) == report
