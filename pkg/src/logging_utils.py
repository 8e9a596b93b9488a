"""Diagnostics for the engine and scripts.

Results are written to stdout by the CLI; every log line goes to stderr so the
two never mix. Per-shape records carry the engine fields (partition, ambient
dimension, rank, timing) as `extra=` values, and both formatters put them first.
"""

import json
import logging
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, Optional, TextIO

ENGINE_FIELDS = (
    "partition",
    "degree",
    "group_order",
    "ambient_dim",
    "rank",
    "nullity",
    "strategy",
    "elapsed_ms",
)

_APP_LOGGERS = ("src", "scripts", "__main__")
_THIRD_PARTY_LOGGERS = ("sympy", "dotenv", "concurrent.futures")

_STANDARD_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", (), None))) | {"message", "asctime", "taskName"}


def _coerce(value: Any) -> Any:
    """JSON-ready form of an extra value; partitions and tableaux use their own to_json()."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    if isinstance(value, (list, tuple)):
        return [_coerce(v) for v in value]
    if isinstance(value, (set, frozenset)):
        items = [_coerce(v) for v in value]
        try:
            return sorted(items)
        except TypeError:
            return sorted(items, key=str)
    if isinstance(value, dict):
        return {str(k): _coerce(v) for k, v in value.items()}
    return str(value)


def record_fields(record: logging.LogRecord) -> Dict[str, Any]:
    """Extra fields of a record, engine fields first in a fixed order."""
    extras = {
        key: _coerce(value)
        for key, value in record.__dict__.items()
        if key not in _STANDARD_ATTRS and not key.startswith("_")
    }
    ordered = {key: extras.pop(key) for key in ENGINE_FIELDS if key in extras}
    ordered.update(sorted(extras.items()))
    return ordered


class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload: Dict[str, Any] = {
            "ts": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        payload.update(record_fields(record))
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        if record.stack_info:
            payload["stack"] = self.formatStack(record.stack_info)
        return json.dumps(payload, ensure_ascii=False)


class KeyValueFormatter(logging.Formatter):
    """`<time> LEVEL logger: message key=value ...` for reading a run in a terminal."""

    def __init__(self) -> None:
        super().__init__("%(asctime)s %(levelname)s %(name)s: %(message)s")

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        fields = record_fields(record)
        if not fields:
            return text
        suffix = " ".join(f"{key}={json.dumps(value, ensure_ascii=False)}" for key, value in fields.items())
        head, newline, tail = text.partition("\n")
        return f"{head} {suffix}{newline}{tail}"


def _resolve_level(debug_mode: bool = False) -> int:
    if debug_mode:
        return logging.DEBUG
    level_name = os.getenv("LOG_LEVEL", "WARNING").upper()
    return getattr(logging, level_name, logging.WARNING)


def _install_handler(level: int, log_format: str, stream: Optional[TextIO] = None) -> logging.Handler:
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.INFO)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(JsonFormatter() if log_format == "json" else KeyValueFormatter())
    handler.setLevel(logging.DEBUG)
    root_logger.addHandler(handler)
    _set_scoped_levels(level)
    return handler


def _set_scoped_levels(app_level: int) -> None:
    for logger_name in _APP_LOGGERS:
        logging.getLogger(logger_name).setLevel(app_level)

    third_party_level_name = os.getenv("THIRD_PARTY_LOG_LEVEL", "WARNING").upper()
    third_party_level = getattr(logging, third_party_level_name, logging.WARNING)
    for logger_name in _THIRD_PARTY_LOGGERS:
        logging.getLogger(logger_name).setLevel(third_party_level)


def configure_bootstrap() -> None:
    """Logging before settings are loaded: LOG_LEVEL and LOG_FORMAT only."""
    _install_handler(_resolve_level(), os.getenv("LOG_FORMAT", "json").lower())


def configure_logging(settings, stream: Optional[TextIO] = None) -> logging.Handler:
    return _install_handler(_resolve_level(settings.debug_mode), os.getenv("LOG_FORMAT", "json").lower(), stream)


def update_log_level(level: int) -> None:
    # --verbose raises app loggers only; sympy and the executor stay quiet.
    _set_scoped_levels(level)
