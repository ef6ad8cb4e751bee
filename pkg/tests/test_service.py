"""HTTP service endpoints, exercised through the in-process test client."""

import pytest
from fastapi.testclient import TestClient

from tn_ntn_sim.config import RunConfig
from tn_ntn_sim.records import AGG_COLUMNS, RAW_COLUMNS
from tn_ntn_sim.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def small_config(**scenario_overrides):
    cfg = RunConfig()
    cfg.scenario.n_users = 20
    for k, v in scenario_overrides.items():
        setattr(cfg.scenario, k, v)
    return cfg.model_dump()


class TestMeta:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}

    def test_presets(self, client):
        assert client.get("/presets").json() == {"presets": ["fig2", "fig3", "fig4"]}

    def test_config_defaults(self, client):
        assert client.get("/config/defaults").json() == RunConfig().model_dump()


class TestRun:
    def test_run_shape(self, client):
        resp = client.post("/run", json={"config": small_config(), "runs": 3})
        assert resp.status_code == 200
        data = resp.json()
        assert data["columns"] == RAW_COLUMNS
        assert len(data["rows"]) == 3
        assert [r["run"] for r in data["rows"]] == [0, 1, 2]
        assert set(data["aggregate"]) == set(AGG_COLUMNS)
        assert data["aggregate"]["runs"] == 3
        assert data["resolved_config"]["runs"] == 3

    def test_seed_override_changes_results(self, client):
        a = client.post("/run", json={"config": small_config(), "runs": 2,
                                      "seed": 1}).json()
        b = client.post("/run", json={"config": small_config(), "runs": 2,
                                      "seed": 2}).json()
        c = client.post("/run", json={"config": small_config(), "runs": 2,
                                      "seed": 1}).json()
        assert a["rows"] == c["rows"]
        assert a["rows"] != b["rows"]
        assert b["resolved_config"]["scenario"]["master_seed"] == 2

    def test_unknown_config_key_rejected(self, client):
        cfg = small_config()
        cfg["scenario"]["bogus"] = 1
        assert client.post("/run", json={"config": cfg}).status_code == 422

    def test_out_of_range_value_rejected(self, client):
        cfg = small_config()
        cfg["disaster"]["p_f"] = 1.5
        assert client.post("/run", json={"config": cfg}).status_code == 422


class TestSweep:
    def test_custom_parameter_sweep(self, client):
        resp = client.post("/sweep", json={
            "config": small_config(),
            "parameter": "USERS", "values": [10, 20], "runs": 2,
        })
        assert resp.status_code == 200
        data = resp.json()
        assert len(data["sweeps"]) == 1
        block = data["sweeps"][0]
        assert block["name"] == "sweep_users"
        assert block["parameter"] == "USERS"
        assert block["agg_columns"] == AGG_COLUMNS
        assert [r["k_users"] for r in block["agg_rows"]] == [10, 20]
        assert len(block["raw_rows"]) == 4

    def test_preset_sweep(self, client):
        resp = client.post("/sweep", json={
            "config": small_config(mode="DISASTER"),
            "preset": "fig3", "runs": 1,
        })
        assert resp.status_code == 200
        (block,) = resp.json()["sweeps"]
        assert block["name"] == "fig3_disaster"
        assert [r["p_f"] for r in block["agg_rows"]] == [0.0, 0.2, 0.4, 0.6,
                                                         0.8, 1.0]
        # fig3 pins K = 300 regardless of the base scenario
        assert {r["k_users"] for r in block["agg_rows"]} == {300}

    def test_missing_spec_rejected(self, client):
        resp = client.post("/sweep", json={"config": small_config()})
        assert resp.status_code == 400
        assert "preset" in resp.json()["detail"]

    def test_unknown_preset_rejected(self, client):
        resp = client.post("/sweep", json={"config": small_config(),
                                           "preset": "fig9"})
        assert resp.status_code == 422

    def test_decreasing_values_rejected(self, client):
        resp = client.post("/sweep", json={
            "config": small_config(),
            "parameter": "USERS", "values": [20, 10], "runs": 1,
        })
        assert resp.status_code == 400
