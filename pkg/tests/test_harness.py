"""Sweep engine: validation, threading invariance, stats and presets."""

import dataclasses

import numpy as np
import pytest

from tn_ntn_sim.errors import ConfigurationError
from tn_ntn_sim.fallback import derive_streams, run_snapshot
from tn_ntn_sim.harness import (PRESET_NAMES, SweepParameter, SweepPoint,
                                SweepSpec, _point_stats, apply_sweep_value,
                                preset_sweeps, run_point, run_sweep)
from tn_ntn_sim.params import Mode
from tn_ntn_sim.scenario import Scenario


class TestApplySweepValue:
    def test_users(self):
        sc = apply_sweep_value(Scenario(), SweepParameter.USERS, 42)
        assert sc.n_users == 42

    def test_failure_prob(self):
        sc = apply_sweep_value(Scenario(), SweepParameter.FAILURE_PROB, 0.7)
        assert sc.disaster.p_f == 0.7

    def test_feeder(self):
        sc = apply_sweep_value(Scenario(), SweepParameter.FEEDER_CAPACITY, 2e8)
        assert sc.ntn.feeder_capacity_bps == 2e8

    def test_eta(self):
        sc = apply_sweep_value(Scenario(), SweepParameter.ETA, 0.25)
        assert sc.disaster.eta_cfg == 0.25

    def test_base_scenario_unchanged(self):
        base = Scenario()
        apply_sweep_value(base, SweepParameter.USERS, 42)
        assert base.n_users == 300

    @pytest.mark.parametrize("param,value", [
        (SweepParameter.USERS, 0),
        (SweepParameter.USERS, 10.5),
        (SweepParameter.FAILURE_PROB, 1.2),
        (SweepParameter.FEEDER_CAPACITY, 0.0),
        (SweepParameter.ETA, -0.1),
    ])
    def test_bad_values_rejected(self, param, value):
        with pytest.raises(ConfigurationError):
            apply_sweep_value(Scenario(), param, value)


class TestSweepSpec:
    def test_valid_spec(self):
        SweepSpec(SweepParameter.USERS, [10, 20, 30], Scenario(), 2).validate()

    @pytest.mark.parametrize("values", [[], [10, 10], [20, 10]])
    def test_values_must_be_strictly_increasing(self, values):
        with pytest.raises(ConfigurationError):
            SweepSpec(SweepParameter.USERS, values, Scenario(), 2).validate()

    def test_runs_must_be_positive(self):
        with pytest.raises(ConfigurationError):
            SweepSpec(SweepParameter.USERS, [10], Scenario(), 0).validate()


class TestRunPoint:
    def test_run_index_seeds(self):
        sc = Scenario(n_users=40, master_seed=17)
        results = run_point(sc, runs=3)
        for i, kpis in enumerate(results):
            direct, _ = run_snapshot(sc, derive_streams(17, i))
            assert dataclasses.astuple(kpis) == dataclasses.astuple(direct)

    def test_thread_count_does_not_change_results(self):
        sc = Scenario(mode=Mode.DISASTER, n_users=60)
        serial = run_point(sc, runs=8, threads=1)
        parallel = run_point(sc, runs=8, threads=4)
        assert ([dataclasses.astuple(k) for k in serial]
                == [dataclasses.astuple(k) for k in parallel])

    def test_rejects_zero_runs(self):
        with pytest.raises(ConfigurationError):
            run_point(Scenario(n_users=10), runs=0)


class TestStats:
    def test_mean_and_sample_std(self):
        sc = Scenario(n_users=40)
        point = SweepPoint(value=40.0, runs=run_point(sc, runs=5))
        _point_stats(point)
        lat = np.array([k.mean_latency_s for k in point.runs])
        assert point.mean["mean_latency_s"] == pytest.approx(lat.mean())
        assert point.std["mean_latency_s"] == pytest.approx(lat.std(ddof=1))

    def test_single_run_std_is_zero(self):
        point = SweepPoint(value=1.0, runs=run_point(Scenario(n_users=10), runs=1))
        _point_stats(point)
        assert point.std["prr"] == 0.0


class TestRunSweep:
    def test_points_follow_values(self):
        spec = SweepSpec(SweepParameter.USERS, [10, 20], Scenario(), 2)
        result = run_sweep(spec, threads=2)
        assert [p.value for p in result.points] == [10.0, 20.0]
        assert all(len(p.runs) == 2 for p in result.points)
        assert result.parameter == SweepParameter.USERS
        assert result.mode == Mode.TN


class TestPresets:
    def test_names(self):
        assert PRESET_NAMES == ("fig2", "fig3", "fig4")

    def test_fig2_covers_all_modes(self):
        specs = preset_sweeps("fig2", Scenario(), runs_per_point=2)
        assert [s.base_scenario.mode for s in specs] == [Mode.TN, Mode.NTN,
                                                         Mode.DISASTER]
        for s in specs:
            assert s.parameter == SweepParameter.USERS
            assert s.values == [100, 200, 300, 400, 500]
            assert s.runs_per_point == 2

    def test_fig3_failure_sweep(self):
        (spec,) = preset_sweeps("fig3", Scenario(), runs_per_point=2)
        assert spec.parameter == SweepParameter.FAILURE_PROB
        assert spec.values == [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
        assert spec.base_scenario.mode == Mode.DISASTER
        assert spec.base_scenario.n_users == 300

    def test_fig4_feeder_sweep(self):
        (spec,) = preset_sweeps("fig4", Scenario(), runs_per_point=2)
        assert spec.parameter == SweepParameter.FEEDER_CAPACITY
        assert spec.values == [150e6, 250e6, 350e6, 450e6, 600e6]

    def test_unknown_preset(self):
        with pytest.raises(ConfigurationError):
            preset_sweeps("fig9", Scenario())
