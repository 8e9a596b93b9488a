"""Runtime settings loader with dotenv reload and caching.

Environment behavior:
- Reads from .env if present (override=True) and refreshes on mtime change.
- Caches settings for a short TTL to avoid reloading on every access.

Tuning:
- DOTENV_PATH can point to a specific env file.
- SETTINGS_CACHE_TTL controls the in-process cache window (seconds, default 1.0).
- SPECHT_* variables size the computations (see Settings).
"""

import os
import time
from dataclasses import dataclass
from threading import Lock
from typing import Optional

from dotenv import find_dotenv, load_dotenv

_DOTENV_PATH = os.getenv("DOTENV_PATH") or find_dotenv(usecwd=True)
_DOTENV_MTIME = None
_ENV_LOCK = Lock()
_SETTINGS_CACHE: Optional["Settings"] = None
_SETTINGS_CACHE_TS = 0.0
_CACHE_TTL = 1.0

TRANSLATION_STRATEGIES = ("auto", "concrete", "seminormal-direct")
PAIRING_CONVENTIONS = ("direct", "conjugate")
DEFAULT_CACHE_DIR = os.path.join("~", ".cache", "specht-invariants")


def _reload_env() -> None:
    global _DOTENV_MTIME
    if _DOTENV_PATH:
        try:
            mtime = os.path.getmtime(_DOTENV_PATH)
        except OSError:
            mtime = None
        if mtime != _DOTENV_MTIME:
            load_dotenv(_DOTENV_PATH, override=True)
            _DOTENV_MTIME = mtime
    else:
        load_dotenv(override=True)


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).lower() == "true"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError as exc:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}") from exc


def _env_choice(name: str, default: str, choices: tuple) -> str:
    value = os.getenv(name, default).strip().lower() or default
    if value not in choices:
        raise RuntimeError(f"{name} must be one of {', '.join(choices)}; got {value!r}")
    return value


@dataclass(frozen=True)
class Settings:
    cache_dir: str
    chartable_max_degree: int
    group_order_cap: int
    series_order: int
    workers: int
    translation: str
    concrete_max_degree: int
    pairing: str
    persist_chartables: bool
    debug_mode: bool


def get_settings(force: bool = False) -> Settings:
    global _SETTINGS_CACHE, _SETTINGS_CACHE_TS, _CACHE_TTL
    now = time.monotonic()
    if not force and _SETTINGS_CACHE and (now - _SETTINGS_CACHE_TS) < _CACHE_TTL:
        return _SETTINGS_CACHE
    with _ENV_LOCK:
        _reload_env()
        _CACHE_TTL = float(os.getenv("SETTINGS_CACHE_TTL", "1.0"))

    cache_dir = os.getenv("SPECHT_CACHE_DIR", "").strip() or DEFAULT_CACHE_DIR

    settings = Settings(
        cache_dir=os.path.abspath(os.path.expanduser(cache_dir)),
        chartable_max_degree=max(1, _env_int("SPECHT_CHARTABLE_MAX_DEGREE", 20)),
        group_order_cap=max(1, _env_int("SPECHT_GROUP_ORDER_CAP", 1_000_000)),
        series_order=max(0, _env_int("SPECHT_SERIES_ORDER", 20)),
        workers=max(1, _env_int("SPECHT_WORKERS", 1)),
        translation=_env_choice("SPECHT_TRANSLATION", "concrete", TRANSLATION_STRATEGIES),
        concrete_max_degree=max(1, _env_int("SPECHT_CONCRETE_MAX_DEGREE", 7)),
        pairing=_env_choice("SPECHT_PAIRING", "direct", PAIRING_CONVENTIONS),
        persist_chartables=_env_bool("SPECHT_PERSIST_CHARTABLES", "true"),
        debug_mode=_env_bool("DEBUG_MODE"),
    )
    _SETTINGS_CACHE = settings
    _SETTINGS_CACHE_TS = now
    return settings


def __getattr__(name: str):
    settings = get_settings()
    mapping = {
        "CACHE_DIR": settings.cache_dir,
        "CHARTABLE_MAX_DEGREE": settings.chartable_max_degree,
        "GROUP_ORDER_CAP": settings.group_order_cap,
        "SERIES_ORDER": settings.series_order,
        "WORKERS": settings.workers,
        "TRANSLATION": settings.translation,
        "CONCRETE_MAX_DEGREE": settings.concrete_max_degree,
        "PAIRING": settings.pairing,
        "PERSIST_CHARTABLES": settings.persist_chartables,
        "DEBUG_MODE": settings.debug_mode,
    }
    if name in mapping:
        return mapping[name]
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
