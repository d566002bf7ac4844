# path: src/infrastructure/settings.py
# description: Environment Configuration Layer v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Configuration):
# Reads the runtime knobs from environment variables once and hands them
# to the adapters as an immutable Settings value. Adapters accept a
# Settings instance through their constructor and fall back to
# load_settings() when none is injected.

import logging
import os
from dataclasses import dataclass

logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_SEARCH_NODE_LIMIT = 20_000_000
DEFAULT_DIRICHLET_WORKERS = 1
DEFAULT_DIRICHLET_CHUNK = 2048
DEFAULT_SVG_DIGITS = 12
DEFAULT_MAX_DENOMINATOR = 12


@dataclass(frozen=True)
class Settings:
    log_level: str = DEFAULT_LOG_LEVEL
    search_node_limit: int = DEFAULT_SEARCH_NODE_LIMIT
    dirichlet_workers: int = DEFAULT_DIRICHLET_WORKERS
    dirichlet_chunk: int = DEFAULT_DIRICHLET_CHUNK
    svg_digits: int = DEFAULT_SVG_DIGITS
    max_denominator: int = DEFAULT_MAX_DENOMINATOR


def _int_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("CONFIG_SYS: %s=%r is not an integer, using %d", name, raw, default)
        return default
    if value < minimum:
        logger.warning("CONFIG_SYS: %s=%d below minimum, using %d", name, value, minimum)
        return minimum
    return value


def load_settings() -> Settings:
    """Snapshot of the TILING_* environment."""
    return Settings(
        log_level=os.getenv("TILING_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
        search_node_limit=_int_env("TILING_SEARCH_NODE_LIMIT", DEFAULT_SEARCH_NODE_LIMIT),
        dirichlet_workers=_int_env("TILING_DIRICHLET_WORKERS", DEFAULT_DIRICHLET_WORKERS),
        dirichlet_chunk=_int_env("TILING_DIRICHLET_CHUNK", DEFAULT_DIRICHLET_CHUNK),
        svg_digits=_int_env("TILING_SVG_DIGITS", DEFAULT_SVG_DIGITS),
        max_denominator=_int_env("TILING_MAX_DENOMINATOR", DEFAULT_MAX_DENOMINATOR, minimum=2),
    )
