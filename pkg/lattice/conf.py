"""Access to the toolkit knobs in Django settings, with documented defaults."""
from __future__ import annotations

from typing import Any

from django.conf import settings

DEFAULTS: dict[str, Any] = {
    "VLP_WORKERS": 1,
    "VLP_SIEVE_MAX_LIMIT": 50_000_000,
    "VLP_SIEVE_SEGMENT_THRESHOLD": 2 ** 22,
    "VLP_SIEVE_SEGMENT_SIZE": 2 ** 20,
    "VLP_TABLE_CACHE_SIZE": 8,
    "VLP_ORACLE_MAX_NORM": 10_000,
    "VLP_ORACLE_TUPLE_BUDGET": 10 ** 8,
    "VLP_CONSTANT_TOL": 1e-10,
    "VLP_LINE_TOL": 1e-3,
    "VLP_L_MAX_BLOCKS": 1_000_000,
    "VLP_ZETA_MAX_TERMS": 1_000_000,
    "VLP_PERRON_NODE_BUDGET": 2 ** 22,
    "VLP_PERRON_CUT_FACTOR": 2,
    "VLP_GRID_RATIO": 1.25,
}


def setting(name: str) -> Any:
    return getattr(settings, name, DEFAULTS[name])
