"""Tests for limits and the YAML configuration layer."""

import pytest
from pydantic import ValidationError

from src.core import config as config_module
from src.core.config import LIMITS_ENV_VAR, Config, get_config
from src.core.models import Limits, RunConfig


@pytest.fixture
def settings(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text(
        "limits:\n"
        "  max_states: 500\n"
        "  token_cap: 30\n"
        "arctl:\n"
        "  max_actions: 4\n"
        "output:\n"
        "  json_indent: 0\n"
        "logging:\n"
        "  level: info\n"
    )
    return path


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv(LIMITS_ENV_VAR, raising=False)
    monkeypatch.setattr(config_module, "_config", None)


def test_parse_overrides_accepts_both_spellings():
    assert Limits.parse_overrides("maxStates=10, token_cap=50,") == {"max_states": 10, "token_cap": 50}


@pytest.mark.parametrize("text", ["maxStates", "colour=3", "maxStates=ten"])
def test_parse_overrides_rejects_bad_items(text):
    with pytest.raises(ValueError):
        Limits.parse_overrides(text)


def test_limits_must_be_positive():
    with pytest.raises(ValidationError):
        Limits(max_states=0)
    with pytest.raises(ValidationError):
        Limits().merged({"token_cap": -1})


def test_file_values_override_defaults(settings):
    config = Config(str(settings))
    assert config.limits.max_states == 500
    assert config.limits.token_cap == 30
    assert config.limits.max_depth == Limits().max_depth
    assert config.arctl_caps == {"max_actions": 4, "max_variables": 3}
    assert config.json_indent == 0
    assert config.log_level == "INFO"


def test_environment_overrides_the_file(settings, monkeypatch):
    monkeypatch.setenv(LIMITS_ENV_VAR, "maxStates=7")
    limits = Config(str(settings)).limits
    assert limits.max_states == 7
    assert limits.token_cap == 30


def test_command_line_overrides_the_environment(settings, monkeypatch):
    monkeypatch.setenv(LIMITS_ENV_VAR, "maxStates=7,tokenCap=9")
    limits = Config(str(settings)).limits.merged(Limits.parse_overrides("tokenCap=11"))
    assert limits.max_states == 7
    assert limits.token_cap == 11


def test_missing_explicit_file_is_an_error(tmp_path):
    with pytest.raises(FileNotFoundError):
        Config(str(tmp_path / "absent.yaml"))


def test_get_config_caches_the_instance(settings):
    first = get_config(str(settings))
    assert get_config() is first
    assert get_config(str(settings)) is first


def test_dot_keys_fall_back_to_defaults(settings):
    config = Config(str(settings))
    assert config.get("limits.max_states") == 500
    assert config.get("limits.nothing", 3) == 3
    assert config.get("output.json_indent.deeper", "x") == "x"


def test_query_text_reads_query_files(tmp_path):
    query = tmp_path / "done.q"
    query.write_text("ef-synth {done}\n")
    run = RunConfig(subcommand="pta", model_path="corpus/coffee.pta", query=str(query))
    assert run.query_text() == "ef-synth {done}\n"
    inline = RunConfig(subcommand="pta", model_path="corpus/coffee.pta", query="ip-check")
    assert inline.query_text() == "ip-check"


def test_blank_queries_are_rejected():
    with pytest.raises(ValidationError):
        RunConfig(subcommand="pta", model_path="corpus/coffee.pta", query="  ")
