"""Parameter containers for the terrestrial layer, the satellite overlay and
the disaster snapshot, with defaults taken from the standard operating point."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ConfigurationError


class Mode(str, enum.Enum):
    TN = "TN"
    NTN = "NTN"
    DISASTER = "DISASTER"


class Mobility(str, enum.Enum):
    UNIFORM = "uniform"
    RPGM_PANIC = "rpgm_panic"


@dataclass
class TnParams:
    """Terrestrial radio and latency parameters (3.5 GHz urban macro)."""

    carrier_hz: float = 3.5e9
    bandwidth_hz: float = 2.0e7
    tx_power_dbm: float = 43.0
    shadowing_sigma_db: float = 8.0
    noise_figure_db: float = 3.0
    gnb_height_m: float = 25.0
    ue_height_m: float = 1.5
    l_max_users: int = 50
    processing_delay_s: float = 0.010
    queue_delay_base_s: float = 0.001

    def validate(self) -> None:
        for name in ("carrier_hz", "bandwidth_hz", "gnb_height_m", "ue_height_m",
                     "processing_delay_s", "queue_delay_base_s"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"tn.{name} must be positive")
        if self.l_max_users < 1:
            raise ConfigurationError("tn.l_max_users must be >= 1")
        if self.shadowing_sigma_db < 0:
            raise ConfigurationError("tn.shadowing_sigma_db must be >= 0")


@dataclass
class NtnParams:
    """LEO overlay parameters: S-band carrier, 600 km orbit, bent-pipe payload.

    ``sat_eirp_dbm`` and ``inter_sat_isolation_db`` are calibration knobs for
    the access-side link budget: isolation models beam/polarization
    discrimination between co-channel satellites, without which the overlay
    would be interference-limited to a few Mbit/s and the feeder link could
    never become the bottleneck.
    """

    carrier_hz: float = 2.0e9
    bandwidth_hz: float = 2.0e7
    altitude_m: float = 6.0e5
    n_satellites: int = 10
    min_elevation_deg: float = 10.0
    sat_eirp_dbm: float = 89.6
    ue_rx_gain_dbi: float = 0.0
    noise_figure_db: float = 7.0
    inter_sat_isolation_db: float = 40.0
    feeder_capacity_bps: float = 450e6
    feeder_latency_weight_s: float = 0.004
    processing_delay_s: float = 0.015
    annulus_inner_m: float = 2.0e5  # 200 km
    annulus_outer_m: float = 1.5e6  # 1500 km

    def validate(self) -> None:
        for name in ("carrier_hz", "bandwidth_hz", "altitude_m",
                     "feeder_capacity_bps", "processing_delay_s"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"ntn.{name} must be positive")
        if self.n_satellites < 1:
            raise ConfigurationError("ntn.n_satellites must be >= 1")
        if not 0 <= self.min_elevation_deg < 90:
            raise ConfigurationError("ntn.min_elevation_deg must be in [0, 90)")
        if not 0 < self.annulus_inner_m < self.annulus_outer_m:
            raise ConfigurationError("ntn annulus radii must satisfy 0 < inner < outer")


@dataclass
class DisasterParams:
    """Failure sampling, offload control and handover penalty constants."""

    p_f: float = 0.5
    eta_cfg: float = 0.5
    reassoc_thr_penalty: float = 0.02
    reassoc_lat_penalty_s: float = 0.001
    migration_thr_penalty: float = 0.15
    migration_lat_penalty_s: float = 0.003
    tau_db: float = -5.0
    weak_margin_db: float = 0.0

    def validate(self) -> None:
        for name in ("p_f", "eta_cfg", "reassoc_thr_penalty", "migration_thr_penalty"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"disaster.{name} must be in [0, 1]")
        if self.reassoc_lat_penalty_s < 0 or self.migration_lat_penalty_s < 0:
            raise ConfigurationError("disaster latency penalties must be >= 0")


@dataclass
class RpgmParams:
    """Panic-aware group mobility placement knobs (single placement draw)."""

    group_size: int = 20
    radius_m: float = 100.0
    panic_fraction: float = 0.5
    panic_shift_m: float = 300.0

    def validate(self) -> None:
        if self.group_size < 1:
            raise ConfigurationError("rpgm.group_size must be >= 1")
        if self.radius_m <= 0:
            raise ConfigurationError("rpgm.radius_m must be positive")
        if not 0.0 <= self.panic_fraction <= 1.0:
            raise ConfigurationError("rpgm.panic_fraction must be in [0, 1]")
        if self.panic_shift_m < 0:
            raise ConfigurationError("rpgm.panic_shift_m must be >= 0")
