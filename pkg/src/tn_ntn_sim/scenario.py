"""Per-run geometry: simulation area, perturbed hexagonal gNB layout, and the
UE population (uniform or panic-aware group placement)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigurationError
from .params import DisasterParams, Mobility, Mode, NtnParams, RpgmParams, TnParams


@dataclass
class Position:
    x: float
    y: float


@dataclass
class GnbSite:
    id: int
    pos: Position
    tx_power_dbm: float = 43.0
    height_m: float = 25.0
    active: bool = True
    load: int = 0


@dataclass
class UserTerminal:
    id: int
    pos: Position
    active: bool = True
    serving_layer: str = "NONE"  # "TN" | "NTN" | "NONE"
    serving_node: Optional[int] = None
    sinr_db: float = float("nan")
    rate_bps: float = 0.0
    latency_s: float = 0.0
    received: bool = False
    forced_fallback: bool = False
    proactive_fallback: bool = False
    reassociated: bool = False


@dataclass
class Scenario:
    """Immutable run configuration. ``mobility=None`` resolves to uniform
    placement in nominal modes and panic groups in disaster mode."""

    area_side_m: float = 2000.0
    n_gnb: int = 10
    isd_m: float = 500.0
    n_users: int = 300
    mode: Mode = Mode.TN
    master_seed: int = 1
    mobility: Optional[Mobility] = None
    perturb_frac: float = 0.1
    activity_factor: float = 1.0
    tn: TnParams = field(default_factory=TnParams)
    ntn: NtnParams = field(default_factory=NtnParams)
    disaster: DisasterParams = field(default_factory=DisasterParams)
    rpgm: RpgmParams = field(default_factory=RpgmParams)

    def validate(self) -> None:
        if self.area_side_m <= 0:
            raise ConfigurationError("area_side_m must be positive")
        if self.n_gnb < 1:
            raise ConfigurationError("n_gnb must be >= 1")
        if self.n_users < 1:
            raise ConfigurationError("n_users must be >= 1")
        if self.isd_m <= 0:
            raise ConfigurationError("isd_m must be positive")
        if not 0.0 <= self.perturb_frac <= 0.5:
            raise ConfigurationError("perturb_frac must be in [0, 0.5]")
        if not 0.0 <= self.activity_factor <= 1.0:
            raise ConfigurationError("activity_factor must be in [0, 1]")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigurationError("master_seed must be a 64-bit unsigned integer")
        self.tn.validate()
        self.ntn.validate()
        self.disaster.validate()
        self.rpgm.validate()

    def resolved_mobility(self) -> Mobility:
        if self.mobility is not None:
            return self.mobility
        return Mobility.RPGM_PANIC if self.mode == Mode.DISASTER else Mobility.UNIFORM


def _hex_lattice(scenario: Scenario) -> np.ndarray:
    """Hexagonal lattice points inside the area, sorted by distance to the
    area center (ties by x then y), with a margin so perturbed sites stay
    inside the area."""
    side = scenario.area_side_m
    isd = scenario.isd_m
    margin = scenario.perturb_frac * isd
    cx = cy = side / 2.0
    row_h = isd * math.sqrt(3.0) / 2.0
    j_max = int(side / row_h) + 2
    i_max = int(side / isd) + 2
    pts = []
    for j in range(-j_max, j_max + 1):
        y = cy + j * row_h
        x_off = (isd / 2.0) if (j % 2) else 0.0
        for i in range(-i_max, i_max + 1):
            x = cx + i * isd + x_off
            if margin <= x <= side - margin and margin <= y <= side - margin:
                pts.append((x, y))
    if not pts:
        raise ConfigurationError(
            f"area {side} m too small for a hexagonal lattice at isd {isd} m")
    pts.sort(key=lambda p: ((p[0] - cx) ** 2 + (p[1] - cy) ** 2, p[0], p[1]))
    return np.asarray(pts)


def generate_gnb_layout(scenario: Scenario, rng: np.random.Generator) -> list[GnbSite]:
    """Perturbed hexagonal layout: the n_gnb lattice points nearest the area
    center, each displaced by an independent uniform offset of at most
    perturb_frac * isd per axis."""
    lattice = _hex_lattice(scenario)
    if len(lattice) < scenario.n_gnb:
        raise ConfigurationError(
            f"area {scenario.area_side_m} m fits only {len(lattice)} lattice "
            f"points at isd {scenario.isd_m} m; {scenario.n_gnb} requested")
    sites = lattice[: scenario.n_gnb].copy()
    mag = scenario.perturb_frac * scenario.isd_m
    sites += rng.uniform(-mag, mag, size=sites.shape)
    return [
        GnbSite(id=i, pos=Position(float(x), float(y)),
                tx_power_dbm=scenario.tn.tx_power_dbm,
                height_m=scenario.tn.gnb_height_m)
        for i, (x, y) in enumerate(sites)
    ]


def _uniform_positions(scenario: Scenario, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(0.0, scenario.area_side_m, size=(scenario.n_users, 2))


def _rpgm_panic_positions(scenario: Scenario, rng: np.random.Generator) -> np.ndarray:
    """Group placement with panic displacement.

    Reference points are uniform over the area; a panic_fraction of groups is
    shifted radially away from the area center (the disaster epicenter proxy)
    by panic_shift_m. Reference points are clamped so every member disk stays
    inside the area.
    """
    p = scenario.rpgm
    k = scenario.n_users
    side = scenario.area_side_m
    n_groups = max(1, k // p.group_size)
    refs = rng.uniform(0.0, side, size=(n_groups, 2))
    n_panic = int(round(p.panic_fraction * n_groups))
    if n_panic and p.panic_shift_m > 0:
        center = np.array([side / 2.0, side / 2.0])
        vec = refs[:n_panic] - center
        norm = np.linalg.norm(vec, axis=1, keepdims=True)
        # a reference point exactly at the center gets a random direction
        degenerate = norm[:, 0] == 0.0
        if degenerate.any():
            theta = rng.uniform(0.0, 2.0 * math.pi, size=int(degenerate.sum()))
            vec[degenerate] = np.column_stack([np.cos(theta), np.sin(theta)])
            norm[degenerate] = 1.0
        refs[:n_panic] = refs[:n_panic] + vec / norm * p.panic_shift_m
    lo = min(p.radius_m, side / 2.0)
    refs = np.clip(refs, lo, side - lo)
    group = np.arange(k) % n_groups
    r = p.radius_m * np.sqrt(rng.uniform(0.0, 1.0, size=k))
    theta = rng.uniform(0.0, 2.0 * math.pi, size=k)
    pos = refs[group] + np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    return np.clip(pos, 0.0, side)


def generate_users(scenario: Scenario, gnbs: list[GnbSite],
                   rng: np.random.Generator) -> list[UserTerminal]:
    """UE population for one run; activity is Bernoulli(activity_factor)."""
    if scenario.n_users == 0:
        return []
    if scenario.resolved_mobility() == Mobility.RPGM_PANIC:
        pos = _rpgm_panic_positions(scenario, rng)
    else:
        pos = _uniform_positions(scenario, rng)
    active = rng.random(scenario.n_users) < scenario.activity_factor
    return [
        UserTerminal(id=i, pos=Position(float(x), float(y)), active=bool(a))
        for i, ((x, y), a) in enumerate(zip(pos, active))
    ]
