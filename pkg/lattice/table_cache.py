from __future__ import annotations

import logging
from typing import Dict, List, Tuple

from .GLOBALS_AND_WORKING import LOCK, TABLES
from .conf import setting
from .fields import FieldSpec
from .sieve import CoefficientTable, MoebiusTable, build_coefficients, build_moebius

log = logging.getLogger("lattice")


def _table_key(kind: str, field: FieldSpec, limit: int) -> Tuple[str, int, int]:
    return (kind, field.d, limit)


def _lookup(kind: str, field: FieldSpec, limit: int):
    # any published table at least as long will do
    with LOCK:
        for key in list(TABLES):
            k, d, lim = key
            if k == kind and d == field.d and lim >= limit:
                TABLES.move_to_end(key)
                return TABLES[key]
    return None


def _store(kind: str, field: FieldSpec, limit: int, table) -> None:
    with LOCK:
        TABLES[_table_key(kind, field, limit)] = table
        while len(TABLES) > setting("VLP_TABLE_CACHE_SIZE"):
            TABLES.popitem(last=False)


def get_coefficients(field: FieldSpec, limit: int, workers: int = 1) -> CoefficientTable:
    table = _lookup("a", field, limit)
    if table is None:
        table = build_coefficients(field, limit, workers=workers)
        _store("a", field, limit, table)
    else:
        log.debug("a_K cache hit for %s (limit %d >= %d)", field.label, table.limit, limit)
    return table


def get_tables(field: FieldSpec, limit: int,
               workers: int = 1) -> Tuple[CoefficientTable, MoebiusTable]:
    coefficients = get_coefficients(field, limit, workers=workers)
    moebius = _lookup("b", field, limit)
    if moebius is None:
        moebius = build_moebius(field, coefficients.limit, coefficients=coefficients)
        _store("b", field, coefficients.limit, moebius)
    return coefficients, moebius


def cache_dump() -> Dict[str, List[int]]:
    result: Dict[str, List[int]] = {}
    with LOCK:
        for kind, d, limit in TABLES:
            result.setdefault(f"{kind}:{d}", []).append(limit)
    return result


def cache_clear() -> None:
    with LOCK:
        TABLES.clear()
