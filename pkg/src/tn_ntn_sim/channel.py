"""Propagation and link-budget primitives.

All functions are pure and accept scalars or numpy arrays. Path-loss models:
COST-231 Hata (urban, metropolitan correction) for the terrestrial layer,
free-space loss for the satellite layer. The Hata formula is an extrapolation
at 3.5 GHz; the model family is only standardized up to 2 GHz.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .params import TnParams

EARTH_RADIUS_M = 6371e3
SPEED_OF_LIGHT_M_S = 299_792_458.0

# COST-231 Hata validity floor; shorter links are clamped to avoid the
# near-field singularity of the log-distance term.
HATA_MIN_DISTANCE_M = 10.0


@dataclass
class LinkSample:
    """One resolved link budget draw."""

    rx_power_dbm: float
    path_loss_db: float
    shadowing_db: float
    distance_m: float


@dataclass
class SlantGeometry:
    slant_range_m: float
    elevation_deg: float


def dbm_to_mw(dbm):
    return np.power(10.0, np.asarray(dbm, dtype=float) / 10.0)


def mw_to_dbm(mw):
    return 10.0 * np.log10(mw)


def hata_path_loss(distance_m, params: TnParams):
    """COST-231 Hata urban path loss in dB (medium-city mobile correction,
    +3 dB metropolitan term). Distance is clamped below at 10 m."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance_m must be positive")
    d_km = np.maximum(d, HATA_MIN_DISTANCE_M) / 1000.0
    f_mhz = params.carrier_hz / 1e6
    h_b = params.gnb_height_m
    h_m = params.ue_height_m
    a_hm = (1.1 * np.log10(f_mhz) - 0.7) * h_m - (1.56 * np.log10(f_mhz) - 0.8)
    pl = (46.3 + 33.9 * np.log10(f_mhz) - 13.82 * np.log10(h_b) - a_hm
          + (44.9 - 6.55 * np.log10(h_b)) * np.log10(d_km) + 3.0)
    return pl if pl.shape else float(pl)


def free_space_path_loss(distance_m, carrier_hz):
    """FSPL in dB: 20 log10(d_km) + 20 log10(f_MHz) + 32.44."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance_m must be positive")
    fspl = 20.0 * np.log10(d / 1000.0) + 20.0 * np.log10(carrier_hz / 1e6) + 32.44
    return fspl if fspl.shape else float(fspl)


def noise_power_dbm(bandwidth_hz: float, noise_figure_db: float) -> float:
    """Thermal noise power over the given bandwidth, plus receiver noise figure."""
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth_hz must be positive")
    return -174.0 + 10.0 * np.log10(bandwidth_hz) + noise_figure_db


def shadowing_db(rng: np.random.Generator, sigma_db: float, shape) -> np.ndarray:
    """Zero-mean log-normal shadowing draws (in dB)."""
    return rng.normal(0.0, sigma_db, size=shape)


def sinr_db(serving: LinkSample, interferers: Iterable[LinkSample], noise_dbm: float) -> float:
    """SINR of a serving link against aggregate interference plus noise."""
    p_s = float(dbm_to_mw(serving.rx_power_dbm))
    p_i = sum(float(dbm_to_mw(l.rx_power_dbm)) for l in interferers)
    n = float(dbm_to_mw(noise_dbm))
    return float(10.0 * np.log10(p_s / (p_i + n)))


def slant_geometry(ground_distance_m, altitude_m):
    """Spherical-Earth slant range and elevation angle.

    ``ground_distance_m`` is the great-circle distance between the terminal
    and the sub-satellite point. Returns exactly (altitude, 90 deg) at zero
    ground distance.
    """
    if altitude_m <= 0:
        raise ValueError("altitude_m must be positive")
    g = np.asarray(ground_distance_m, dtype=float)
    re = EARTH_RADIUS_M
    rs = re + altitude_m
    psi = g / re
    slant = np.sqrt(re**2 + rs**2 - 2.0 * re * rs * np.cos(psi))
    with np.errstate(divide="ignore", invalid="ignore"):
        elev = np.degrees(np.arctan2(np.cos(psi) - re / rs, np.sin(psi)))
    # zenith case: psi == 0 makes atan2 well-defined (atan2(1-re/rs, 0) = 90 deg)
    slant = np.where(psi == 0.0, altitude_m, slant)
    if slant.shape:
        return slant, elev
    return SlantGeometry(float(slant), float(elev))
