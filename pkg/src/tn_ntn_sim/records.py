"""Flat result records and deterministic CSV emission.

Internal KPI values are SI; rows report Mbps and ms to match the usual
figure axes. Floats are written with 6 significant digits and a
locale-independent decimal point, so identical results are byte-identical.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable

from .fallback import SnapshotKpis
from .harness import SweepPoint
from .scenario import Scenario

RAW_COLUMNS = [
    "mode", "k_users", "p_f", "eta_cfg", "feeder_mbps", "run", "seed",
    "per_user_thr_mbps", "latency_ms", "prr", "fallback_ratio",
    "active_gnbs", "n_unserved",
]

_KPI_COLUMNS = ["per_user_thr_mbps", "latency_ms", "prr", "fallback_ratio",
                "active_gnbs", "n_unserved"]

AGG_COLUMNS = (["mode", "k_users", "p_f", "eta_cfg", "feeder_mbps"]
               + [f"{c}_{s}" for c in _KPI_COLUMNS for s in ("mean", "std")]
               + ["runs"])

# SnapshotKpis field and unit scale behind each reported KPI column
_KPI_SOURCES = {
    "per_user_thr_mbps": ("per_user_throughput_bps", 1e-6),
    "latency_ms": ("mean_latency_s", 1e3),
    "prr": ("prr", 1.0),
    "fallback_ratio": ("fallback_ratio", 1.0),
    "active_gnbs": ("n_active_gnbs", 1.0),
    "n_unserved": ("n_unserved", 1.0),
}


def _operating_point(scenario: Scenario) -> dict:
    return {
        "mode": scenario.mode.value,
        "k_users": scenario.n_users,
        "p_f": scenario.disaster.p_f,
        "eta_cfg": scenario.disaster.eta_cfg,
        "feeder_mbps": scenario.ntn.feeder_capacity_bps / 1e6,
    }


def raw_row(scenario: Scenario, run_index: int, kpis: SnapshotKpis) -> dict:
    row = _operating_point(scenario)
    row["run"] = run_index
    row["seed"] = scenario.master_seed
    for col, (field, scale) in _KPI_SOURCES.items():
        row[col] = getattr(kpis, field) * scale
    return row


def agg_row(scenario: Scenario, point: SweepPoint) -> dict:
    row = _operating_point(scenario)
    for col, (field, scale) in _KPI_SOURCES.items():
        row[f"{col}_mean"] = point.mean[field] * scale
        row[f"{col}_std"] = point.std[field] * scale
    row["runs"] = len(point.runs)
    return row


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def write_csv(path, columns: list[str], rows: Iterable[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row[c]) for c in columns])


def write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
