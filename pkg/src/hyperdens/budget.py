"""Resource budgets, overridable through environment variables.

Values are read at call time so tests and batch drivers can adjust them
without re-importing the package.
"""

from __future__ import annotations

import os

VERTEX_CAP_ENV = "HYPERDENS_VERTEX_CAP"
PREFIX_CAP_ENV = "HYPERDENS_PREFIX_VERTEX_CAP"
TIME_CAP_ENV = "HYPERDENS_TIME_CAP"
WORKERS_ENV = "HYPERDENS_WORKERS"

DEFAULT_VERTEX_CAP = 10**6
DEFAULT_PREFIX_VERTEX_CAP = 10**5
DEFAULT_TIME_CAP = 60.0
DEFAULT_WORKERS = 1


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def vertex_cap() -> int:
    """Largest vertex count a Hypergraph may be built with."""
    return _int_env(VERTEX_CAP_ENV, DEFAULT_VERTEX_CAP)


def prefix_vertex_cap() -> int:
    """Largest prefix a family generator will materialize."""
    return _int_env(PREFIX_CAP_ENV, DEFAULT_PREFIX_VERTEX_CAP)


def time_cap() -> float:
    """Wall-clock budget (seconds) for tolerance-driven evaluation."""
    raw = os.environ.get(TIME_CAP_ENV)
    if raw is None:
        return DEFAULT_TIME_CAP
    value = float(raw)
    if value <= 0:
        raise ValueError(f"{TIME_CAP_ENV} must be positive, got {raw!r}")
    return value


def workers() -> int:
    """Worker count for the partitionable scans (results never depend on it)."""
    return _int_env(WORKERS_ENV, DEFAULT_WORKERS)
