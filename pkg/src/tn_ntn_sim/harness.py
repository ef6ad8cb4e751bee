"""Monte Carlo runner and sweep engine.

Each run gets its own random streams derived from (master_seed, run_index)
via a SeedSequence spawn key, so results are reproducible for any degree of
parallelism. Run seeds are deliberately shared across sweep points and across
modes (common random numbers): a sweep then isolates the swept parameter, the
realized fallback ratio is exactly constant over a feeder sweep, and paired
mode comparisons are exact at the p_f = 0 boundary.
"""

from __future__ import annotations

import dataclasses
import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .fallback import SnapshotKpis, derive_streams, run_snapshot
from .params import Mode
from .scenario import Scenario


class SweepParameter(str, enum.Enum):
    USERS = "USERS"
    FAILURE_PROB = "FAILURE_PROB"
    FEEDER_CAPACITY = "FEEDER_CAPACITY"
    ETA = "ETA"


@dataclass
class SweepSpec:
    parameter: SweepParameter
    values: list[float]
    base_scenario: Scenario
    runs_per_point: int = 50

    def validate(self) -> None:
        if not self.values:
            raise ConfigurationError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigurationError("sweep values must be strictly increasing")
        if self.runs_per_point < 1:
            raise ConfigurationError("runs_per_point must be >= 1")
        for v in self.values:
            apply_sweep_value(self.base_scenario, self.parameter, v).validate()


@dataclass
class SweepPoint:
    value: float
    runs: list[SnapshotKpis]
    mean: dict[str, float] = field(default_factory=dict)
    std: dict[str, float] = field(default_factory=dict)


@dataclass
class SweepResult:
    parameter: SweepParameter
    mode: Mode
    points: list[SweepPoint]


# KPI fields summarized per sweep point
STAT_FIELDS = ("per_user_throughput_bps", "mean_latency_s", "prr",
               "fallback_ratio", "n_active_gnbs", "n_unserved")


def apply_sweep_value(scenario: Scenario, parameter: SweepParameter,
                      value: float) -> Scenario:
    """Clone the scenario with the swept field substituted."""
    if parameter == SweepParameter.USERS:
        if value < 1 or value != int(value):
            raise ConfigurationError(f"USERS sweep value {value} must be a positive integer")
        return dataclasses.replace(scenario, n_users=int(value))
    if parameter == SweepParameter.FAILURE_PROB:
        if not 0.0 <= value <= 1.0:
            raise ConfigurationError(f"FAILURE_PROB sweep value {value} outside [0, 1]")
        return dataclasses.replace(
            scenario, disaster=dataclasses.replace(scenario.disaster, p_f=float(value)))
    if parameter == SweepParameter.FEEDER_CAPACITY:
        if value <= 0:
            raise ConfigurationError(f"FEEDER_CAPACITY sweep value {value} must be positive")
        return dataclasses.replace(
            scenario, ntn=dataclasses.replace(scenario.ntn, feeder_capacity_bps=float(value)))
    if parameter == SweepParameter.ETA:
        if not 0.0 <= value <= 1.0:
            raise ConfigurationError(f"ETA sweep value {value} outside [0, 1]")
        return dataclasses.replace(
            scenario, disaster=dataclasses.replace(scenario.disaster, eta_cfg=float(value)))
    raise ConfigurationError(f"unknown sweep parameter {parameter}")


def run_point(scenario: Scenario, runs: int, threads: int = 1) -> list[SnapshotKpis]:
    """Execute independent snapshots; run i uses streams derived from
    (master_seed, i). Output order is by run index regardless of threading."""
    scenario.validate()
    if runs < 1:
        raise ConfigurationError("runs must be >= 1")

    def one(i: int) -> SnapshotKpis:
        kpis, _ = run_snapshot(scenario, derive_streams(scenario.master_seed, i))
        return kpis

    if threads <= 1:
        return [one(i) for i in range(runs)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(runs)))


def _point_stats(point: SweepPoint) -> None:
    for name in STAT_FIELDS:
        vals = np.array([getattr(k, name) for k in point.runs], dtype=float)
        point.mean[name] = float(vals.mean())
        point.std[name] = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    spec.validate()
    points = []
    for value in spec.values:
        sc = apply_sweep_value(spec.base_scenario, spec.parameter, value)
        point = SweepPoint(value=float(value),
                           runs=run_point(sc, spec.runs_per_point, threads))
        _point_stats(point)
        points.append(point)
    return SweepResult(spec.parameter, spec.base_scenario.mode, points)


# ---------------------------------------------------------------------------
# experiment presets

PRESET_NAMES = ("fig2", "fig3", "fig4")


def preset_sweeps(name: str, base: Scenario, runs_per_point: int = 50) -> list[SweepSpec]:
    """Built-in experiment definitions.

    fig2: mode comparison (TN, NTN, disaster) over K in 100..500;
    fig3: failure-probability sweep 0..1 at K=300;
    fig4: feeder-capacity sweep 150..600 Mbps at p_f=0.5, eta=0.5, K=300.
    """
    if name == "fig2":
        ks = [100, 200, 300, 400, 500]
        return [
            SweepSpec(SweepParameter.USERS, ks,
                      dataclasses.replace(base, mode=mode), runs_per_point)
            for mode in (Mode.TN, Mode.NTN, Mode.DISASTER)
        ]
    if name == "fig3":
        sc = dataclasses.replace(base, mode=Mode.DISASTER, n_users=300)
        return [SweepSpec(SweepParameter.FAILURE_PROB,
                          [0.0, 0.2, 0.4, 0.6, 0.8, 1.0], sc, runs_per_point)]
    if name == "fig4":
        sc = dataclasses.replace(base, mode=Mode.DISASTER, n_users=300)
        return [SweepSpec(SweepParameter.FEEDER_CAPACITY,
                          [150e6, 250e6, 350e6, 450e6, 600e6], sc, runs_per_point)]
    raise ConfigurationError(
        f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}")
