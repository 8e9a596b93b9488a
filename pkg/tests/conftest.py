from types import SimpleNamespace

import pytest

from src import config


def make_settings(**overrides) -> SimpleNamespace:
    base = {
        "cache_dir": "specht-cache",
        "chartable_max_degree": 20,
        "group_order_cap": 1_000_000,
        "series_order": 20,
        "workers": 1,
        "translation": "concrete",
        "concrete_max_degree": 7,
        "pairing": "direct",
        "persist_chartables": False,
        "debug_mode": False,
    }
    base.update(overrides)
    return SimpleNamespace(**base)


@pytest.fixture
def specht_settings(monkeypatch, tmp_path):
    """Patches config.get_settings; call the fixture value with overrides to change them."""
    state = {"settings": make_settings(cache_dir=str(tmp_path / "cache"))}
    monkeypatch.setattr(config, "get_settings", lambda force=False: state["settings"])

    def override(**changes) -> SimpleNamespace:
        state["settings"] = make_settings(**{**vars(state["settings"]), **changes})
        return state["settings"]

    return override
