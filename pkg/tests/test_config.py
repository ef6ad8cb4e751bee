"""Configuration parsing: defaults, files, dotted overrides and rejection."""

import dataclasses

import pytest

from tn_ntn_sim.config import RunConfig, parse_config, to_scenario
from tn_ntn_sim.errors import ConfigurationError
from tn_ntn_sim.params import Mobility, Mode
from tn_ntn_sim.scenario import Scenario


class TestDefaults:
    def test_empty_config_matches_scenario_defaults(self):
        # the pydantic schema duplicates the dataclass defaults; any drift
        # between the two is a bug
        built = to_scenario(parse_config())
        native = Scenario()
        assert dataclasses.asdict(built) == dataclasses.asdict(native)

    def test_default_runs(self):
        assert parse_config().runs == 50


class TestFiles:
    def test_yaml_file(self, tmp_path):
        p = tmp_path / "cfg.yaml"
        p.write_text("scenario:\n  n_users: 123\n  mode: DISASTER\n"
                     "disaster:\n  p_f: 0.8\n")
        cfg = parse_config(str(p))
        assert cfg.scenario.n_users == 123
        assert cfg.scenario.mode == "DISASTER"
        assert cfg.disaster.p_f == 0.8

    def test_json_file(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text('{"scenario": {"n_users": 77}}')
        assert parse_config(str(p)).scenario.n_users == 77

    def test_empty_file_means_defaults(self, tmp_path):
        p = tmp_path / "empty.yaml"
        p.write_text("")
        assert parse_config(str(p)) == RunConfig()

    def test_non_mapping_file_rejected(self, tmp_path):
        p = tmp_path / "list.yaml"
        p.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            parse_config(str(p))


class TestOverrides:
    def test_dotted_override(self):
        cfg = parse_config(overrides=("scenario.n_users=42",
                                      "disaster.p_f=0.9",
                                      "ntn.feeder_capacity_bps=1.5e8"))
        assert cfg.scenario.n_users == 42
        assert cfg.disaster.p_f == 0.9
        assert cfg.ntn.feeder_capacity_bps == 1.5e8

    def test_override_beats_file(self, tmp_path):
        p = tmp_path / "cfg.yaml"
        p.write_text("scenario:\n  n_users: 100\n")
        cfg = parse_config(str(p), overrides=("scenario.n_users=200",))
        assert cfg.scenario.n_users == 200

    def test_malformed_override(self):
        with pytest.raises(ConfigurationError):
            parse_config(overrides=("scenario.n_users",))

    def test_override_through_scalar(self):
        with pytest.raises(ConfigurationError):
            parse_config(overrides=("runs.zzz=1",))


class TestRejection:
    def test_unknown_key(self):
        with pytest.raises(ConfigurationError) as err:
            parse_config(overrides=("scenario.no_such_field=1",))
        assert "no_such_field" in str(err.value)

    def test_unknown_section(self):
        with pytest.raises(ConfigurationError):
            parse_config(overrides=("nope.x=1",))

    @pytest.mark.parametrize("override", [
        "disaster.p_f=1.5",
        "scenario.n_users=0",
        "scenario.mode=MESH",
        "scenario.perturb_frac=0.9",
        "ntn.n_satellites=0",
        "tn.l_max_users=0",
    ])
    def test_out_of_range_values(self, override):
        with pytest.raises(ConfigurationError):
            parse_config(overrides=(override,))


class TestToScenario:
    def test_mode_and_mobility_mapping(self):
        cfg = parse_config(overrides=("scenario.mode=DISASTER",
                                      "scenario.mobility=uniform"))
        sc = to_scenario(cfg)
        assert sc.mode == Mode.DISASTER
        assert sc.mobility == Mobility.UNIFORM
        assert to_scenario(parse_config()).mobility is None
