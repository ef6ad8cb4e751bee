"""System-level Monte Carlo simulator for integrated terrestrial / LEO
satellite networks under partial terrestrial failure."""

from .errors import ConfigurationError
from .fallback import SnapshotKpis, run_snapshot
from .harness import SweepParameter, SweepSpec, run_point, run_sweep
from .params import DisasterParams, Mode, NtnParams, TnParams
from .scenario import Scenario

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DisasterParams",
    "Mode",
    "NtnParams",
    "Scenario",
    "SnapshotKpis",
    "SweepParameter",
    "SweepSpec",
    "TnParams",
    "run_point",
    "run_snapshot",
    "run_sweep",
    "__version__",
]
