"""Ideal-count coefficients a_K(n), their Dirichlet inverse b_K(n) and j_K(x).

All tables are dense numpy arrays indexed by the norm, with a dummy slot at
index 0. Published tables are read-only.
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .conf import setting
from .exceptions import CapacityError, OutOfRangeError
from .fields import FieldSpec, SplittingType, character_mod

log = logging.getLogger("lattice")


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    field: FieldSpec
    limit: int
    a: np.ndarray
    j_cum: np.ndarray

    def j(self, x: float) -> int:
        return j_K(self, x)


@dataclass(frozen=True, eq=False)
class MoebiusTable:
    field: FieldSpec
    limit: int
    b: np.ndarray
    # running sums of b, used to evaluate the counting sums block by block
    b_cum: np.ndarray


def _publish(*arrays: np.ndarray) -> None:
    for arr in arrays:
        arr.flags.writeable = False


def _check_capacity(X: int) -> None:
    if X < 1:
        raise ValueError("table limit must be at least 1")
    budget = setting("VLP_SIEVE_MAX_LIMIT")
    if X > budget:
        raise CapacityError(f"table limit {X} exceeds the configured budget {budget}")


def primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for i in range(3, math.isqrt(n) + 1, 2):
        if is_p[i]:
            is_p[i * i::2 * i] = False
    return np.flatnonzero(is_p)


def _segments(X: int) -> list[tuple[int, int]]:
    if X + 1 <= setting("VLP_SIEVE_SEGMENT_THRESHOLD"):
        return [(1, X + 1)]
    size = setting("VLP_SIEVE_SEGMENT_SIZE")
    return [(lo, min(lo + size, X + 1)) for lo in range(1, X + 1, size)]


def _divisor_sum_segment(chi: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """sum_{e | n} chi(e) for lo <= n < hi.

    Divisor pairs e * j = n are split at S = isqrt(hi - 1): small e are
    added by strided slices, large e through their small cofactor j.
    """
    q = len(chi)
    seg = np.zeros(hi - lo, dtype=np.int64)
    S = math.isqrt(hi - 1)
    for e in range(1, S + 1):
        c = int(chi[e % q])
        if c == 0:
            continue
        start = -(-lo // e) * e
        if start < hi:
            seg[start - lo::e] += c
    for j in range(1, (hi - 1) // (S + 1) + 1):
        start = max(lo, j * (S + 1))
        start = -(-start // j) * j
        if start >= hi:
            continue
        ns = np.arange(start, hi, j, dtype=np.int64)
        seg[ns - lo] += chi[(ns // j) % q]
    return seg


def build_coefficients(field: FieldSpec, X: int, workers: int = 1) -> CoefficientTable:
    """a[n] = number of ideals of norm n, for 1 <= n <= X."""
    _check_capacity(X)
    started = time.perf_counter()
    if field.is_rational:
        a = np.ones(X + 1, dtype=np.int32)
        a[0] = 0
    else:
        chi = character_mod(field)
        segments = _segments(X)
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            parts = list(pool.map(lambda seg: _divisor_sum_segment(chi, *seg), segments))
        a = np.concatenate([np.zeros(1, dtype=np.int64)] + parts).astype(np.int32)
    j_cum = np.cumsum(a, dtype=np.int64)
    _publish(a, j_cum)
    log.debug("a_K table for %s up to %d in %.3fs", field.label, X, time.perf_counter() - started)
    return CoefficientTable(field=field, limit=X, a=a, j_cum=j_cum)


def j_K(table: CoefficientTable, x: float) -> int:
    """Number of ideals of norm <= x (a step function of x)."""
    if math.floor(x) > table.limit:
        raise OutOfRangeError(f"x={x} is beyond the table limit {table.limit}")
    if x < 1:
        return 0
    return int(table.j_cum[math.floor(x)])


def build_moebius(field: FieldSpec, X: int, coefficients: CoefficientTable | None = None,
                  workers: int = 1) -> MoebiusTable:
    """Dirichlet inverse of a: b[1] = 1, b[n] = -sum_{d | n, d < n} b[d] a[n/d]."""
    _check_capacity(X)
    if coefficients is None or coefficients.limit < X:
        coefficients = build_coefficients(field, X, workers=workers)
    started = time.perf_counter()
    a = coefficients.a[:X + 1].astype(np.int64)
    b = np.zeros(X + 1, dtype=np.int64)
    b[1] = 1
    S = math.isqrt(X)
    for d in range(1, S + 1):
        bd = b[d]
        if bd:
            b[2 * d::d] -= bd * a[2:X // d + 1]
    # Beyond S, every n in [L, 2L) has all its proper divisors below L, so
    # a whole dyadic block is final once everything below it is processed.
    L = S + 1
    while L <= X // 2:
        H = min(2 * L, X + 1)
        for k in range(2, X // L + 1):
            ak = a[k]
            top = min(H, X // k + 1)
            if top <= L:
                break
            if ak:
                ds = np.arange(L, top, dtype=np.int64)
                b[k * ds] -= b[L:top] * ak
        L = H
    b_cum = np.cumsum(b, dtype=np.int64)
    b = b.astype(np.int32)
    _publish(b, b_cum)
    log.debug("b_K table for %s up to %d in %.3fs", field.label, X, time.perf_counter() - started)
    return MoebiusTable(field=field, limit=X, b=b, b_cum=b_cum)


# Values of the local factor of 1/zeta_K at p^1 and p^2 (zero beyond).
_LOCAL_MOEBIUS: dict[SplittingType | None, tuple[int, int]] = {
    None: (-1, 0),                      # rational field
    SplittingType.SPLIT: (-2, 1),       # (1 - u)^2
    SplittingType.INERT: (0, -1),       # 1 - u^2
    SplittingType.RAMIFIED: (-1, 0),    # 1 - u
}


def build_moebius_by_factorization(field: FieldSpec, X: int) -> MoebiusTable:
    """b assembled multiplicatively from the Euler factors of 1/zeta_K."""
    _check_capacity(X)
    chi = character_mod(field)
    q = len(chi)
    b = np.ones(X + 1, dtype=np.int64)
    b[0] = 0
    for p in primes_upto(X).tolist():
        if field.is_rational:
            kind = None
        else:
            symbol = int(chi[p % q])
            kind = {1: SplittingType.SPLIT, -1: SplittingType.INERT, 0: SplittingType.RAMIFIED}[symbol]
        first, second = _LOCAL_MOEBIUS[kind]
        factor = np.full(X // p, first, dtype=np.int64)
        factor[p - 1::p] = second
        factor[p * p - 1::p * p] = 0
        b[p::p] *= factor
    b_cum = np.cumsum(b, dtype=np.int64)
    b = b.astype(np.int32)
    _publish(b, b_cum)
    return MoebiusTable(field=field, limit=X, b=b, b_cum=b_cum)


def dirichlet_convolve(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """(u * v)[n] = sum_{d | n} u[d] v[n/d] over the common index range."""
    X = min(len(u), len(v)) - 1
    u = np.asarray(u[:X + 1], dtype=np.int64)
    v = np.asarray(v[:X + 1], dtype=np.int64)
    out = np.zeros(X + 1, dtype=np.int64)
    for d in range(1, X + 1):
        ud = u[d]
        if ud:
            out[d::d] += ud * v[1:X // d + 1]
    return out
