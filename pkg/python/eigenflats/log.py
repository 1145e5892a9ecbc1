"""Logging setup for the `eigenflats` logger hierarchy."""

from __future__ import annotations

import logging
import sys
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

_handler: Optional[logging.Handler] = None


def setup_logging(level: str = "WARNING") -> logging.Logger:
    """Install one stderr handler on the package logger (idempotent)."""
    global _handler
    logger = logging.getLogger("eigenflats")
    if _handler is None:
        _handler = logging.StreamHandler(sys.stderr)
        _handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(_handler)
        logger.propagate = False
    logger.setLevel(level.upper())
    return logger
