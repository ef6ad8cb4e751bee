"""LEO overlay: constellation placement, visibility-masked max-RX association,
shared-carrier rates, bent-pipe latency, and the feeder-capacity constraint."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import (SPEED_OF_LIGHT_M_S, dbm_to_mw, free_space_path_loss,
                      noise_power_dbm, slant_geometry)
from .errors import ConfigurationError
from .params import NtnParams

# feeder utilization cap for the saturation latency term
FEEDER_RHO_CAP = 0.95


@dataclass
class Satellite:
    id: int
    subpoint_offset_m: tuple[float, float]  # from the area center
    altitude_m: float
    load: int = 0


@dataclass
class FeederState:
    capacity_bps: float
    offered_bps: float
    utilization: float


@dataclass
class NtnLink:
    """Per-user serving satellite and access-link state (None when no
    satellite clears the elevation mask)."""

    sat_id: Optional[int]
    sinr_db: float
    slant_range_m: float
    elevation_deg: float


def place_constellation(params: NtnParams, rng: np.random.Generator) -> list[Satellite]:
    """Static snapshot constellation: one satellite over the area center, the
    rest with sub-satellite points uniform over a ground annulus."""
    if params.n_satellites < 1:
        raise ConfigurationError("n_satellites must be >= 1")
    sats = [Satellite(id=0, subpoint_offset_m=(0.0, 0.0), altitude_m=params.altitude_m)]
    n_rest = params.n_satellites - 1
    if n_rest:
        r = np.sqrt(rng.uniform(params.annulus_inner_m**2,
                                params.annulus_outer_m**2, size=n_rest))
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n_rest)
        for i, (ri, ti) in enumerate(zip(r, theta), start=1):
            sats.append(Satellite(id=i,
                                  subpoint_offset_m=(float(ri * np.cos(ti)),
                                                     float(ri * np.sin(ti))),
                                  altitude_m=params.altitude_m))
    return sats


def ntn_associate(user_pos: np.ndarray, area_center: np.ndarray,
                  sats: list[Satellite], params: NtnParams) -> list[NtnLink]:
    """Max-RX-power association over satellites above the elevation mask.

    Satellites below the mask are excluded from both the serving and the
    interfering set; remaining co-channel satellites interfere with their
    received power reduced by the inter-satellite isolation.
    """
    k = len(user_pos)
    if k == 0:
        return []
    sub = np.array([[s.subpoint_offset_m[0], s.subpoint_offset_m[1]] for s in sats])
    sub = sub + area_center[None, :]
    ground = np.hypot(user_pos[:, None, 0] - sub[None, :, 0],
                      user_pos[:, None, 1] - sub[None, :, 1])
    slant, elev = slant_geometry(np.maximum(ground, 1e-9), params.altitude_m)
    visible = elev >= params.min_elevation_deg
    rx_dbm = (params.sat_eirp_dbm
              - free_space_path_loss(slant, params.carrier_hz)
              + params.ue_rx_gain_dbi)
    rx_mw = dbm_to_mw(rx_dbm)
    noise_mw = float(dbm_to_mw(noise_power_dbm(params.bandwidth_hz,
                                               params.noise_figure_db)))
    isolation = 10.0 ** (-params.inter_sat_isolation_db / 10.0)
    masked = np.where(visible, rx_mw, -np.inf)
    links: list[NtnLink] = []
    for u in range(k):
        if not visible[u].any():
            links.append(NtnLink(None, float("nan"), float("nan"), float("nan")))
            continue
        s = int(np.argmax(masked[u]))  # ties resolve to the lowest id
        interf = (rx_mw[u][visible[u]].sum() - rx_mw[u, s]) * isolation
        sinr = 10.0 * np.log10(rx_mw[u, s] / (interf + noise_mw))
        links.append(NtnLink(s, float(sinr), float(slant[u, s]), float(elev[u, s])))
    return links


def ntn_user_rate_latency(link: NtnLink, sat_load: int,
                          params: NtnParams) -> tuple[float, float]:
    """Rate on the serving satellite's equally shared carrier, and bent-pipe
    latency: two space hops (service + feeder leg) plus ground processing."""
    if sat_load < 1:
        raise ValueError("sat_load must be >= 1")
    rate = (params.bandwidth_hz / sat_load
            * float(np.log2(1.0 + 10.0 ** (link.sinr_db / 10.0))))
    latency = 2.0 * link.slant_range_m / SPEED_OF_LIGHT_M_S + params.processing_delay_s
    return rate, latency


def apply_feeder_constraint(rates_bps: np.ndarray, latencies_s: np.ndarray,
                            params: NtnParams):
    """Shared feeder cap of the transparent payload.

    When the offered sum exceeds capacity all rates are scaled down
    proportionally; every overlay user additionally pays an M/M/1-shaped
    latency term driven by the (capped) feeder utilization.
    """
    if params.feeder_capacity_bps <= 0:
        raise ConfigurationError("feeder_capacity_bps must be positive")
    rates = np.asarray(rates_bps, dtype=float).copy()
    lats = np.asarray(latencies_s, dtype=float).copy()
    offered = float(rates.sum())
    rho = offered / params.feeder_capacity_bps
    if rho > 1.0:
        rates /= rho
    rho_eff = min(rho, FEEDER_RHO_CAP)
    lats += params.feeder_latency_weight_s * rho_eff / (1.0 - rho_eff)
    return rates, lats, FeederState(params.feeder_capacity_bps, offered, rho)
