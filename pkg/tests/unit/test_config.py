"""Unit tests for YAML/TOML/JSON settings loading."""

import json
import logging
from unittest.mock import patch

import pytest

from lolli.config import Settings, load_config, settings_from_config
from lolli.engine import SearchConfig
from lolli.exc import ConfigError


class TestLoadConfig:
    def test_json_loading(self, tmp_path):
        config = {"lolli": {"budget": 500, "trace": True}}
        f = tmp_path / "test.json"
        f.write_text(json.dumps(config))
        assert load_config(f) == config

    def test_toml_loading(self, tmp_path):
        f = tmp_path / "test.toml"
        f.write_text('[lolli]\nbudget = 500\nclause_order = "as-written"\n')
        try:
            result = load_config(f)
        except ImportError:
            pytest.skip("No TOML library available")
        assert result["lolli"]["budget"] == 500

    def test_yaml_loading(self, tmp_path):
        f = tmp_path / "test.yaml"
        f.write_text("lolli:\n  budget: 500\n  trace: true\n")
        try:
            result = load_config(f)
        except ImportError:
            pytest.skip("pyyaml not installed")
        assert result["lolli"] == {"budget": 500, "trace": True}

    def test_empty_yaml_is_empty(self, tmp_path):
        f = tmp_path / "empty.yml"
        f.write_text("")
        try:
            assert load_config(f) == {}
        except ImportError:
            pytest.skip("pyyaml not installed")

    def test_unknown_extension_raises(self, tmp_path):
        f = tmp_path / "test.ini"
        f.write_text("[lolli]\n")
        with pytest.raises(ValueError, match="Unsupported config file extension"):
            load_config(f)

    def test_missing_file_raises(self):
        with pytest.raises(FileNotFoundError):
            load_config("/nonexistent/path/lolli.json")

    def test_yaml_missing_dep_message(self, tmp_path):
        f = tmp_path / "test.yaml"
        f.write_text("budget: 5\n")
        with patch.dict("sys.modules", {"yaml": None}):
            with pytest.raises(ImportError, match=r"pip install lolli\[yaml\]"):
                load_config(f)


class TestSettings:
    def test_defaults(self):
        s = Settings()
        assert s.budget == 100_000
        assert s.step_budget == 100_000
        assert s.collect is True
        assert s.level == logging.WARNING

    def test_section_or_top_level(self):
        assert Settings.from_mapping({"lolli": {"budget": 7}}).budget == 7
        assert Settings.from_mapping({"budget": 7}).budget == 7

    def test_log_level_is_uppercased(self):
        s = Settings.from_mapping({"log_level": "debug"})
        assert s.log_level == "DEBUG"
        assert s.level == logging.DEBUG

    def test_search_config(self):
        s = Settings.from_mapping({"budget": 42, "trace": True})
        assert s.search_config() == SearchConfig(budget=42, trace=True)

    def test_replace_ignores_none(self):
        s = Settings(budget=9)
        assert s.replace(budget=None, trace=True) == Settings(budget=9, trace=True)

    def test_from_file(self, tmp_path):
        f = tmp_path / "lolli.json"
        f.write_text(json.dumps({"lolli": {"step_budget": 12, "collect": False}}))
        s = settings_from_config(f)
        assert s.step_budget == 12
        assert s.collect is False


class TestValidation:
    @pytest.mark.parametrize("data", [
        {"budget": 0},
        {"budget": "100"},
        {"trace": "yes"},
        {"clause_order": "random"},
        {"log_level": "LOUD"},
        {"colour": True},
    ])
    def test_rejected(self, data):
        with pytest.raises(ConfigError, match="Invalid settings") as exc_info:
            Settings.from_mapping(data)
        assert exc_info.value.errors

    def test_errors_name_the_field(self):
        with pytest.raises(ConfigError) as exc_info:
            Settings.from_mapping({"budget": -1, "trace": True})
        assert [e["loc"] for e in exc_info.value.errors] == [("budget",)]

    def test_strict_types(self):
        with pytest.raises(ConfigError, match="step_budget"):
            Settings.from_mapping({"step_budget": 5.0})
        with pytest.raises(ConfigError, match="collect"):
            Settings.from_mapping({"collect": 1})
