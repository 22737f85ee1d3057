"""
Centralized logging configuration for cyclotower.

This module provides a centralized logger factory with support for
different log levels and output formats (text/JSON). Reports are written
to stdout by the CLI, so all log output goes to stderr.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import time
from collections.abc import MutableMapping
from typing import Any

# Global logger cache to avoid duplicate handlers
_loggers: dict[str, logging.Logger] = {}

# Set by set_format; overrides LOG_FORMAT for loggers created afterwards
_format: str | None = None

# Record attributes rendered as context, in display order
_CONTEXT_FIELDS = ("command", "p", "r", "q")


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the specified name.

    Args:
        name: Logger name, typically __name__ of the calling module

    Returns:
        Configured logger instance
    """
    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)

    # Only configure if no handlers exist (avoid duplicate logs)
    if not logger.handlers:
        _configure_logger(logger)

    _loggers[name] = logger
    return logger


def _configure_logger(logger: logging.Logger) -> None:
    """Configure a logger with appropriate handlers and formatters."""
    log_level = os.getenv("LOG_LEVEL", "WARNING").upper()
    log_format = _format or os.getenv("LOG_FORMAT", "text").lower()

    level = getattr(logging, log_level, logging.WARNING)
    logger.setLevel(level)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)

    handler.setFormatter(_make_formatter(log_format))
    logger.addHandler(handler)

    # Prevent propagation to root logger to avoid duplicate logs
    logger.propagate = False


def set_level(level: str) -> None:
    """Apply a log level to every logger handed out so far."""
    resolved = getattr(logging, level.upper(), logging.WARNING)
    for logger in _loggers.values():
        logger.setLevel(resolved)
        for handler in logger.handlers:
            handler.setLevel(resolved)


def set_format(log_format: str) -> None:
    """Switch every logger handed out so far, and all later ones, to text or JSON output."""
    global _format
    _format = log_format.lower()
    for logger in _loggers.values():
        for handler in logger.handlers:
            handler.setFormatter(_make_formatter(_format))


def _make_formatter(log_format: str) -> logging.Formatter:
    if log_format == "json":
        return _JsonFormatter()
    return _TextFormatter()


class _TextFormatter(logging.Formatter):
    """Text formatter for human-readable logs."""

    def __init__(self) -> None:
        super().__init__(
            fmt="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as text, prefixed with any context fields."""
        context = [
            f"{key}={getattr(record, key)}"
            for key in _CONTEXT_FIELDS
            if hasattr(record, key)
        ]
        line = super().format(record)
        if context:
            return f"[{' '.join(context)}] {line}"
        return line


class _JsonFormatter(logging.Formatter):
    """JSON formatter for structured logging."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON."""
        log_entry: dict[str, Any] = {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(record.created)),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for key in _CONTEXT_FIELDS:
            if hasattr(record, key):
                log_entry[key] = getattr(record, key)

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        # Add file and line info for debug level
        if record.levelno <= logging.DEBUG:
            log_entry.update({
                "file": record.pathname,
                "line": record.lineno,
                "function": record.funcName,
            })

        return json.dumps(log_entry, ensure_ascii=False)


def add_context(logger: logging.Logger, **kwargs: Any) -> logging.LoggerAdapter[logging.Logger]:
    """Create a logger adapter with additional context fields.

    Args:
        logger: Base logger instance
        **kwargs: Context fields (p, r, q, command) added to all messages

    Returns:
        LoggerAdapter with context
    """
    return _ContextLoggerAdapter(logger, kwargs)


class _ContextLoggerAdapter(logging.LoggerAdapter):  # type: ignore[type-arg]
    """Logger adapter that adds context to log messages."""

    def process(
        self, msg: Any, kwargs: MutableMapping[str, Any]
    ) -> tuple[Any, MutableMapping[str, Any]]:
        extra = dict(kwargs.get("extra") or {})
        extra.update(self.extra or {})
        kwargs["extra"] = extra
        return msg, kwargs
