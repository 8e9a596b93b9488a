import os

import pytest

from src import config

_SPECHT_VARS = (
    "SPECHT_CACHE_DIR",
    "SPECHT_CHARTABLE_MAX_DEGREE",
    "SPECHT_GROUP_ORDER_CAP",
    "SPECHT_SERIES_ORDER",
    "SPECHT_WORKERS",
    "SPECHT_TRANSLATION",
    "SPECHT_CONCRETE_MAX_DEGREE",
    "SPECHT_PAIRING",
    "SPECHT_PERSIST_CHARTABLES",
    "DEBUG_MODE",
)


def _reset_settings_cache() -> None:
    config._SETTINGS_CACHE = None
    config._SETTINGS_CACHE_TS = 0.0


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.setattr(config, "_reload_env", lambda: None)
    for name in _SPECHT_VARS:
        monkeypatch.delenv(name, raising=False)
    _reset_settings_cache()
    yield monkeypatch
    _reset_settings_cache()


def test_defaults(clean_env) -> None:
    settings = config.get_settings(force=True)

    assert settings.cache_dir == os.path.abspath(os.path.expanduser("~/.cache/specht-invariants"))
    assert settings.chartable_max_degree == 20
    assert settings.group_order_cap == 1_000_000
    assert settings.series_order == 20
    assert settings.workers == 1
    assert settings.translation == "concrete"
    assert settings.concrete_max_degree == 7
    assert settings.pairing == "direct"
    assert settings.persist_chartables is True
    assert settings.debug_mode is False


def test_env_overrides(clean_env, tmp_path) -> None:
    clean_env.setenv("SPECHT_CACHE_DIR", str(tmp_path))
    clean_env.setenv("SPECHT_SERIES_ORDER", "12")
    clean_env.setenv("SPECHT_GROUP_ORDER_CAP", "5_000")
    clean_env.setenv("SPECHT_TRANSLATION", "Seminormal-Direct")
    clean_env.setenv("SPECHT_PERSIST_CHARTABLES", "false")
    clean_env.setenv("DEBUG_MODE", "true")

    settings = config.get_settings(force=True)

    assert settings.cache_dir == str(tmp_path)
    assert settings.series_order == 12
    assert settings.group_order_cap == 5000
    assert settings.translation == "seminormal-direct"
    assert settings.persist_chartables is False
    assert settings.debug_mode is True


def test_workers_are_clamped(clean_env) -> None:
    clean_env.setenv("SPECHT_WORKERS", "0")
    assert config.get_settings(force=True).workers == 1


def test_invalid_choice_names_the_variable(clean_env) -> None:
    clean_env.setenv("SPECHT_PAIRING", "transpose")
    with pytest.raises(RuntimeError, match="SPECHT_PAIRING"):
        config.get_settings(force=True)


def test_invalid_integer_names_the_variable(clean_env) -> None:
    clean_env.setenv("SPECHT_SERIES_ORDER", "twenty")
    with pytest.raises(RuntimeError, match="SPECHT_SERIES_ORDER"):
        config.get_settings(force=True)


def test_settings_are_cached_until_forced(clean_env) -> None:
    first = config.get_settings(force=True)
    clean_env.setenv("SPECHT_SERIES_ORDER", "3")
    assert config.get_settings() is first
    assert config.get_settings(force=True).series_order == 3


def test_module_attributes_proxy_settings(clean_env) -> None:
    clean_env.setenv("SPECHT_CONCRETE_MAX_DEGREE", "5")
    config.get_settings(force=True)

    assert config.CONCRETE_MAX_DEGREE == 5
    assert config.PAIRING == "direct"
    with pytest.raises(AttributeError):
        getattr(config, "NOT_A_SETTING")
