"""Run configuration: a human-editable YAML/JSON document with every default
pre-filled, strict unknown-key rejection, and dotted-path overrides."""

from __future__ import annotations

from typing import Literal, Optional

import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, Field

from .errors import ConfigurationError
from .params import DisasterParams, Mobility, Mode, NtnParams, RpgmParams, TnParams
from .scenario import Scenario


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ScenarioSection(_Strict):
    area_side_m: float = Field(2000.0, gt=0)
    n_gnb: int = Field(10, ge=1)
    isd_m: float = Field(500.0, gt=0)
    n_users: int = Field(300, ge=1)
    mode: Literal["TN", "NTN", "DISASTER"] = "TN"
    master_seed: int = Field(1, ge=0, lt=2**64)
    mobility: Optional[Literal["uniform", "rpgm_panic"]] = None
    perturb_frac: float = Field(0.1, ge=0.0, le=0.5)
    activity_factor: float = Field(1.0, ge=0.0, le=1.0)


class TnSection(_Strict):
    carrier_hz: float = Field(3.5e9, gt=0)
    bandwidth_hz: float = Field(2.0e7, gt=0)
    tx_power_dbm: float = 43.0
    shadowing_sigma_db: float = Field(8.0, ge=0)
    noise_figure_db: float = 3.0
    gnb_height_m: float = Field(25.0, gt=0)
    ue_height_m: float = Field(1.5, gt=0)
    l_max_users: int = Field(50, ge=1)
    processing_delay_s: float = Field(0.010, gt=0)
    queue_delay_base_s: float = Field(0.001, gt=0)


class NtnSection(_Strict):
    carrier_hz: float = Field(2.0e9, gt=0)
    bandwidth_hz: float = Field(2.0e7, gt=0)
    altitude_m: float = Field(6.0e5, gt=0)
    n_satellites: int = Field(10, ge=1)
    min_elevation_deg: float = Field(10.0, ge=0, lt=90)
    sat_eirp_dbm: float = 89.6
    ue_rx_gain_dbi: float = 0.0
    noise_figure_db: float = 7.0
    inter_sat_isolation_db: float = Field(40.0, ge=0)
    feeder_capacity_bps: float = Field(450e6, gt=0)
    feeder_latency_weight_s: float = Field(0.004, ge=0)
    processing_delay_s: float = Field(0.015, gt=0)
    annulus_inner_m: float = Field(2.0e5, gt=0)
    annulus_outer_m: float = Field(1.5e6, gt=0)


class DisasterSection(_Strict):
    p_f: float = Field(0.5, ge=0.0, le=1.0)
    eta_cfg: float = Field(0.5, ge=0.0, le=1.0)
    reassoc_thr_penalty: float = Field(0.02, ge=0.0, le=1.0)
    reassoc_lat_penalty_s: float = Field(0.001, ge=0)
    migration_thr_penalty: float = Field(0.15, ge=0.0, le=1.0)
    migration_lat_penalty_s: float = Field(0.003, ge=0)
    tau_db: float = -5.0
    weak_margin_db: float = 0.0


class RpgmSection(_Strict):
    group_size: int = Field(20, ge=1)
    radius_m: float = Field(100.0, gt=0)
    panic_fraction: float = Field(0.5, ge=0.0, le=1.0)
    panic_shift_m: float = Field(300.0, ge=0)


class RunConfig(_Strict):
    """Fully resolved run configuration (all defaults pre-filled)."""

    scenario: ScenarioSection = Field(default_factory=ScenarioSection)
    tn: TnSection = Field(default_factory=TnSection)
    ntn: NtnSection = Field(default_factory=NtnSection)
    disaster: DisasterSection = Field(default_factory=DisasterSection)
    rpgm: RpgmSection = Field(default_factory=RpgmSection)
    runs: int = Field(50, ge=1)


def _format_validation_error(exc: pydantic.ValidationError) -> str:
    lines = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"])
        lines.append(f"{loc}: {err['msg']}")
    return "invalid configuration: " + "; ".join(lines)


def _set_dotted(data: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    node = data
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ConfigurationError(f"override {dotted!r}: {p!r} is not a section")
    node[parts[-1]] = value


def parse_config(path: Optional[str] = None, overrides: tuple[str, ...] = ()) -> RunConfig:
    """Load a YAML/JSON config file (empty file = all defaults) and apply
    ``key.path=value`` overrides on top."""
    data: dict = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh)
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigurationError(f"config file {path} must contain a mapping")
        data = loaded
    for item in overrides:
        if "=" not in item:
            raise ConfigurationError(f"override {item!r} must look like key.path=value")
        key, _, raw = item.partition("=")
        _set_dotted(data, key.strip(), yaml.safe_load(raw))
    try:
        return RunConfig(**data)
    except pydantic.ValidationError as exc:
        raise ConfigurationError(_format_validation_error(exc)) from exc


def to_scenario(cfg: RunConfig) -> Scenario:
    s = cfg.scenario
    return Scenario(
        area_side_m=s.area_side_m,
        n_gnb=s.n_gnb,
        isd_m=s.isd_m,
        n_users=s.n_users,
        mode=Mode(s.mode),
        master_seed=s.master_seed,
        mobility=Mobility(s.mobility) if s.mobility else None,
        perturb_frac=s.perturb_frac,
        activity_factor=s.activity_factor,
        tn=TnParams(**cfg.tn.model_dump()),
        ntn=NtnParams(**cfg.ntn.model_dump()),
        disaster=DisasterParams(**cfg.disaster.model_dump()),
        rpgm=RpgmParams(**cfg.rpgm.model_dump()),
    )
