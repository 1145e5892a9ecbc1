"""Runtime configuration loaded from `.env` and the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

from eigenflats.errors import ConfigError

# ============ DEFAULTS ============
DEFAULT_GROUP_CAP = 100_000
DEFAULT_E7_CAP = 3_000_000
DEFAULT_SEED = 20240601
DEFAULT_LOG_LEVEL = "WARNING"


def _int_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _bool_env(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{name} must be a boolean flag, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    """Process-wide defaults; command-line flags override them per run."""

    workers: int
    group_cap: int
    e7_cap: int
    log_level: str
    progress: bool
    seed: int

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        level = os.getenv("EIGENFLATS_LOG", DEFAULT_LOG_LEVEL).strip().upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigError(f"EIGENFLATS_LOG must be a log level name, got {level!r}")
        return cls(
            workers=_int_env("EIGENFLATS_WORKERS", os.cpu_count() or 1, minimum=1),
            group_cap=_int_env("EIGENFLATS_GROUP_CAP", DEFAULT_GROUP_CAP, minimum=1),
            e7_cap=_int_env("EIGENFLATS_E7_CAP", DEFAULT_E7_CAP, minimum=1),
            log_level=level,
            progress=_bool_env("EIGENFLATS_PROGRESS", False),
            seed=_int_env("EIGENFLATS_SEED", DEFAULT_SEED),
        )


@lru_cache(maxsize=None)
def get_settings() -> Settings:
    return Settings.from_env()


def resolve_workers(requested: Optional[int]) -> int:
    """Explicit worker count, falling back to the environment default."""
    if requested is None:
        return get_settings().workers
    if requested < 1:
        raise ConfigError(f"worker count must be >= 1, got {requested}")
    return requested
