"""
Tests for the logging helpers.
"""

import json
import logging

from src.cyclotower.logging import _JsonFormatter, _TextFormatter, add_context, get_logger, set_format, set_level


def make_record(**extra):
    record = logging.LogRecord("cyclotower.test", logging.INFO, __file__, 1, "Built tower", None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


class TestFormatters:
    """Test cases for the text and JSON formatters."""

    def test_text_context_prefix(self):
        line = _TextFormatter().format(make_record(command="check", p=3, r=7))
        assert line.startswith("[command=check p=3 r=7] ")
        assert line.endswith("cyclotower.test: Built tower")

    def test_text_without_context(self):
        assert not _TextFormatter().format(make_record()).startswith("[command")

    def test_json_fields(self):
        entry = json.loads(_JsonFormatter().format(make_record(p=3, q=13)))
        assert entry["message"] == "Built tower"
        assert entry["level"] == "INFO"
        assert (entry["p"], entry["q"]) == (3, 13)
        assert "r" not in entry


class TestLoggers:
    """Test cases for get_logger, set_level, set_format and add_context."""

    def test_cached(self):
        assert get_logger("cyclotower.cached") is get_logger("cyclotower.cached")

    def test_set_level(self):
        logger = get_logger("cyclotower.level")
        set_level("debug")
        assert logger.level == logging.DEBUG
        set_level("WARNING")
        assert logger.level == logging.WARNING

    def test_set_format(self):
        logger = get_logger("cyclotower.format")
        try:
            set_format("JSON")
            assert isinstance(logger.handlers[0].formatter, _JsonFormatter)
            assert isinstance(get_logger("cyclotower.format_later").handlers[0].formatter, _JsonFormatter)
        finally:
            set_format("text")
        assert isinstance(logger.handlers[0].formatter, _TextFormatter)

    def test_add_context(self):
        adapter = add_context(get_logger("cyclotower.context"), p=3, r=19)
        _, kwargs = adapter.process("message", {"extra": {"q": 7}})
        assert kwargs["extra"] == {"q": 7, "p": 3, "r": 19}
