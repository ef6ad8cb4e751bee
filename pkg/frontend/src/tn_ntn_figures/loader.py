"""Loading and validation of aggregate sweep CSVs produced by ``sim sweep``."""

from __future__ import annotations

from pathlib import Path

import pandas as pd

# aggregate-CSV schema written by the simulator
KEY_COLUMNS = ["mode", "k_users", "p_f", "eta_cfg", "feeder_mbps"]
KPI_COLUMNS = ["per_user_thr_mbps", "latency_ms", "prr", "fallback_ratio",
               "active_gnbs", "n_unserved"]
AGG_COLUMNS = (KEY_COLUMNS
               + [f"{c}_{s}" for c in KPI_COLUMNS for s in ("mean", "std")]
               + ["runs"])


class FigureDataError(ValueError):
    """Raised when an input CSV is missing, empty, or off-schema."""


def load_agg_csv(path: Path | str) -> pd.DataFrame:
    """Read one aggregate sweep CSV, enforcing the simulator's schema."""
    path = Path(path)
    if not path.exists():
        raise FigureDataError(f"missing input file: {path}")
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError as exc:
        raise FigureDataError(f"empty input file: {path}") from exc
    missing = [c for c in AGG_COLUMNS if c not in frame.columns]
    if missing:
        raise FigureDataError(
            f"{path} does not match the aggregate sweep schema; "
            f"missing columns: {', '.join(missing)}")
    if frame.empty:
        raise FigureDataError(f"{path} contains a header but no sweep points")
    return frame
