import io
import json
import logging
import sys
from fractions import Fraction
from types import SimpleNamespace

from src import logging_utils
from src.combinatorics import Partition


def _record(**extra) -> logging.LogRecord:
    record = logging.LogRecord(
        name="src.secondary_engine",
        level=logging.INFO,
        pathname=__file__,
        lineno=10,
        msg="Processed shape",
        args=(),
        exc_info=None,
    )
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_json_formatter_puts_engine_fields_first() -> None:
    line = logging_utils.JsonFormatter().format(_record(invariants=4, rank=2, partition="[2, 2]", ambient_dim=2))
    payload = json.loads(line)

    assert payload["message"] == "Processed shape"
    assert payload["logger"] == "src.secondary_engine"
    assert payload["level"] == "INFO"
    assert list(payload)[4:] == ["partition", "ambient_dim", "rank", "invariants"]


def test_extras_are_coerced_to_json() -> None:
    payload = json.loads(
        logging_utils.JsonFormatter().format(
            _record(partition=Partition((3, 1)), ratio=Fraction(1, 3), group={2, 1}, other=object())
        )
    )

    assert payload["partition"] == [3, 1]
    assert payload["ratio"] == "1/3"
    assert payload["group"] == [1, 2]
    assert isinstance(payload["other"], str)


def test_key_value_formatter_appends_fields() -> None:
    text = logging_utils.KeyValueFormatter().format(_record(rank=2, partition=Partition((2, 2)), strategy="concrete"))

    assert "INFO src.secondary_engine: Processed shape" in text
    assert text.endswith('partition=[2, 2] rank=2 strategy="concrete"')


def test_key_value_formatter_without_fields() -> None:
    assert logging_utils.KeyValueFormatter().format(_record()).endswith("src.secondary_engine: Processed shape")


def test_configure_logging_writes_to_stderr(monkeypatch) -> None:
    monkeypatch.setenv("LOG_FORMAT", "json")
    handler = logging_utils.configure_logging(SimpleNamespace(debug_mode=False))

    assert handler.stream is sys.stderr
    assert isinstance(handler.formatter, logging_utils.JsonFormatter)


def test_configured_handler_emits_engine_records(monkeypatch) -> None:
    monkeypatch.setenv("LOG_FORMAT", "json")
    stream = io.StringIO()
    logging_utils.configure_logging(SimpleNamespace(debug_mode=True), stream=stream)

    logging.getLogger("src.secondary_engine").info("Processed shape", extra={"partition": Partition((4,)), "rank": 1})
    payload = json.loads(stream.getvalue().splitlines()[-1])
    assert payload["partition"] == [4]
    assert payload["rank"] == 1


def test_configure_logging_uses_debug_mode(monkeypatch) -> None:
    monkeypatch.setenv("LOG_FORMAT", "text")
    monkeypatch.setenv("LOG_LEVEL", "ERROR")

    handler = logging_utils.configure_logging(SimpleNamespace(debug_mode=True))
    assert logging.getLogger("src").level == logging.DEBUG
    assert isinstance(handler.formatter, logging_utils.KeyValueFormatter)

    logging_utils.configure_logging(SimpleNamespace(debug_mode=False))
    assert logging.getLogger("src").level == logging.ERROR


def test_third_party_loggers_default_to_warning(monkeypatch) -> None:
    monkeypatch.delenv("THIRD_PARTY_LOG_LEVEL", raising=False)
    logging_utils.configure_bootstrap()

    assert logging.getLogger("sympy").level == logging.WARNING


def test_update_log_level_touches_app_loggers_only(monkeypatch) -> None:
    monkeypatch.delenv("THIRD_PARTY_LOG_LEVEL", raising=False)
    logging_utils.update_log_level(logging.DEBUG)

    assert logging.getLogger("__main__").level == logging.DEBUG
    assert logging.getLogger("sympy").level == logging.WARNING
