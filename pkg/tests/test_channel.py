"""Closed-form oracles and invariants for the propagation primitives."""

import math

import numpy as np
import pytest

from tn_ntn_sim.channel import (EARTH_RADIUS_M, HATA_MIN_DISTANCE_M, LinkSample,
                                SlantGeometry, dbm_to_mw, free_space_path_loss,
                                hata_path_loss, mw_to_dbm, noise_power_dbm,
                                shadowing_db, sinr_db, slant_geometry)
from tn_ntn_sim.params import TnParams


def hata_reference(d_m: float, p: TnParams) -> float:
    """Independent one-line COST-231 Hata evaluation (urban, medium city,
    +3 dB metropolitan correction)."""
    f = p.carrier_hz / 1e6
    a_hm = (1.1 * math.log10(f) - 0.7) * p.ue_height_m - (1.56 * math.log10(f) - 0.8)
    return (46.3 + 33.9 * math.log10(f) - 13.82 * math.log10(p.gnb_height_m) - a_hm
            + (44.9 - 6.55 * math.log10(p.gnb_height_m)) * math.log10(d_m / 1000.0)
            + 3.0)


class TestHataPathLoss:
    def test_matches_independent_evaluation(self):
        p = TnParams()
        for d in (50.0, 200.0, 500.0, 1000.0, 2828.4):
            assert hata_path_loss(d, p) == pytest.approx(hata_reference(d, p), abs=1e-9)

    def test_short_links_clamped_to_validity_floor(self):
        p = TnParams()
        assert hata_path_loss(1.0, p) == hata_path_loss(HATA_MIN_DISTANCE_M, p)
        assert hata_path_loss(9.9, p) == hata_path_loss(10.0, p)

    def test_monotone_in_distance(self):
        p = TnParams()
        d = np.linspace(10.0, 3000.0, 200)
        pl = hata_path_loss(d, p)
        assert np.all(np.diff(pl) > 0)

    def test_vectorized_matches_scalar(self):
        p = TnParams()
        d = np.array([100.0, 400.0, 900.0])
        vec = hata_path_loss(d, p)
        assert vec.shape == (3,)
        for i, di in enumerate(d):
            assert vec[i] == pytest.approx(hata_path_loss(float(di), p))

    def test_rejects_nonpositive_distance(self):
        with pytest.raises(ValueError):
            hata_path_loss(0.0, TnParams())


class TestFreeSpacePathLoss:
    def test_reference_point_600km_2ghz(self):
        assert free_space_path_loss(600e3, 2.0e9) == pytest.approx(154.03, abs=0.01)

    def test_inverse_square_law(self):
        # doubling the distance adds 20 log10(2) dB
        assert (free_space_path_loss(200e3, 2.0e9)
                - free_space_path_loss(100e3, 2.0e9)) == pytest.approx(
                    20.0 * math.log10(2.0))

    def test_rejects_nonpositive_distance(self):
        with pytest.raises(ValueError):
            free_space_path_loss(-1.0, 2.0e9)


class TestNoisePower:
    def test_reference_point_20mhz_nf3(self):
        assert noise_power_dbm(20e6, 3.0) == pytest.approx(-97.99, abs=0.01)

    def test_bandwidth_scaling(self):
        assert (noise_power_dbm(40e6, 0.0)
                - noise_power_dbm(20e6, 0.0)) == pytest.approx(10.0 * math.log10(2.0))

    def test_rejects_nonpositive_bandwidth(self):
        with pytest.raises(ValueError):
            noise_power_dbm(0.0, 3.0)


class TestUnitConversions:
    def test_round_trip(self):
        for dbm in (-120.0, -30.0, 0.0, 43.0):
            assert mw_to_dbm(dbm_to_mw(dbm)) == pytest.approx(dbm)

    def test_known_points(self):
        assert dbm_to_mw(0.0) == pytest.approx(1.0)
        assert dbm_to_mw(30.0) == pytest.approx(1000.0)


class TestSinr:
    def test_matches_manual_power_budget(self):
        serving = LinkSample(rx_power_dbm=-80.0, path_loss_db=120.0,
                             shadowing_db=0.0, distance_m=100.0)
        interferers = [
            LinkSample(rx_power_dbm=-95.0, path_loss_db=0.0, shadowing_db=0.0,
                       distance_m=0.0),
            LinkSample(rx_power_dbm=-100.0, path_loss_db=0.0, shadowing_db=0.0,
                       distance_m=0.0),
        ]
        noise = -97.99
        expected = 10.0 * math.log10(
            10 ** (-8.0) / (10 ** (-9.5) + 10 ** (-10.0) + 10 ** (noise / 10.0)))
        assert sinr_db(serving, interferers, noise) == pytest.approx(expected)

    def test_no_interference_reduces_to_snr(self):
        serving = LinkSample(-90.0, 0.0, 0.0, 0.0)
        assert sinr_db(serving, [], -97.99) == pytest.approx(-90.0 + 97.99)


class TestSlantGeometry:
    def test_zenith_is_exact(self):
        geo = slant_geometry(0.0, 600e3)
        assert isinstance(geo, SlantGeometry)
        assert geo.slant_range_m == 600e3
        assert geo.elevation_deg == 90.0

    def test_reference_point_10deg_600km(self):
        # invert the spherical triangle for a 10 deg elevation target
        elev = math.radians(10.0)
        re, rs = EARTH_RADIUS_M, EARTH_RADIUS_M + 600e3
        psi = math.acos(re * math.cos(elev) / rs) - elev
        geo = slant_geometry(re * psi, 600e3)
        expected_slant = (math.sqrt(rs**2 - (re * math.cos(elev)) ** 2)
                          - re * math.sin(elev))
        assert geo.elevation_deg == pytest.approx(10.0, abs=1e-9)
        assert geo.slant_range_m == pytest.approx(expected_slant, rel=1e-12)
        assert geo.slant_range_m == pytest.approx(1932e3, abs=2e3)

    def test_elevation_decreases_with_ground_distance(self):
        g = np.linspace(0.0, 2.5e6, 100)
        slant, elev = slant_geometry(g, 600e3)
        assert np.all(np.diff(elev) < 0)
        assert np.all(np.diff(slant) > 0)

    def test_array_matches_scalar(self):
        g = np.array([0.0, 5e5, 1.5e6])
        slant, elev = slant_geometry(g, 600e3)
        for i, gi in enumerate(g):
            geo = slant_geometry(float(gi), 600e3)
            assert slant[i] == pytest.approx(geo.slant_range_m)
            assert elev[i] == pytest.approx(geo.elevation_deg)

    def test_rejects_nonpositive_altitude(self):
        with pytest.raises(ValueError):
            slant_geometry(1e5, 0.0)


class TestShadowing:
    def test_moments(self):
        rng = np.random.default_rng(123)
        draws = shadowing_db(rng, 8.0, 1_000_000)
        assert abs(draws.mean()) < 0.05
        assert draws.std() == pytest.approx(8.0, rel=0.02)

    def test_shape_and_determinism(self):
        a = shadowing_db(np.random.default_rng(7), 8.0, (4, 5))
        b = shadowing_db(np.random.default_rng(7), 8.0, (4, 5))
        assert a.shape == (4, 5)
        np.testing.assert_array_equal(a, b)
