"""Visible and relatively s-prime lattice point counts over ideals.

V_m^s(x) = sum_{n^s <= x} b[n] j_K(x / n^s)^m, evaluated with exact integers.
The brute-force oracle enumerates ideals as prime-ideal exponent vectors and
checks every m-tuple directly.
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .conf import setting
from .exceptions import CapacityError, DomainError, OutOfRangeError, UndefinedMainTermError
from .fields import FieldSpec, SplittingType, splitting_type
from .sieve import CoefficientTable, MoebiusTable, primes_upto
from .table_cache import get_tables
from .zeta import zeta_K_at

log = logging.getLogger("lattice")

Tables = Tuple[CoefficientTable, MoebiusTable]
PrimeLabel = Tuple[int, int]


@dataclass
class CountSeries:
    field: FieldSpec
    m: int
    s: int
    xs: List[float]
    counts: List[int]
    main_terms: List[float]
    errors: List[float]
    kind: str = "visible"

    @property
    def densities(self) -> List[float]:
        """V / (c x)^m; tends to 1/zeta_K(m s)."""
        c = self.field.residue_c
        return [v / (c * x) ** self.m for x, v in zip(self.xs, self.counts)]

    def rows(self):
        return zip(self.xs, self.counts, self.main_terms, self.errors)


@dataclass(frozen=True)
class Ideal:
    norm: int
    factors: Tuple[Tuple[PrimeLabel, int], ...] = ()


@dataclass
class IdealList:
    field: FieldSpec
    limit: int
    ideals: List[Ideal] = dc_field(default_factory=list)

    def norm_counts(self) -> np.ndarray:
        return np.bincount([i.norm for i in self.ideals], minlength=self.limit + 1)


def _check_args(tables: Tables, m: int, x: float, s: int = 1) -> int:
    if m < 1 or int(m) != m:
        raise DomainError(f"m must be a positive integer, got {m}")
    if s < 1 or int(s) != s:
        raise DomainError(f"s must be a positive integer, got {s}")
    limit = min(tables[0].limit, tables[1].limit)
    # the counts only see floor(x)
    if math.floor(x) > limit:
        raise OutOfRangeError(f"x={x} is beyond the table limit {limit}")
    return math.floor(x) if x >= 1 else 0


def visible_count(tables: Tables, m: int, x: float) -> int:
    """Number of m-tuples of ideals of norm <= x with no common prime ideal."""
    X = _check_args(tables, m, x)
    coefficients, moebius = tables
    j_cum = coefficients.j_cum
    b_cum = moebius.b_cum
    total = 0
    n = 1
    # floor(X / n) is constant on [n, X // (X // n)]
    while n <= X:
        v = X // n
        top = X // v
        weight = int(b_cum[top]) - int(b_cum[n - 1])
        if weight:
            total += weight * int(j_cum[v]) ** m
        n = top + 1
    return total


def integer_root(X: int, s: int) -> int:
    if X < 1:
        return 0
    r = int(round(X ** (1.0 / s)))
    while r ** s > X:
        r -= 1
    while (r + 1) ** s <= X:
        r += 1
    return r


def sprime_count(tables: Tables, m: int, s: int, x: float) -> int:
    """Number of relatively s-prime m-tuples of ideals of norm <= x."""
    X = _check_args(tables, m, x, s)
    if s == 1:
        return visible_count(tables, m, x)
    coefficients, moebius = tables
    j_cum = coefficients.j_cum
    b = moebius.b
    total = 0
    for n in range(1, integer_root(X, s) + 1):
        bn = int(b[n])
        if bn:
            total += bn * int(j_cum[X // n ** s]) ** m
    return total


@lru_cache(maxsize=256)
def _zeta_at(field: FieldSpec, order: int) -> float:
    return zeta_K_at(field, order).value


def main_term(field: FieldSpec, m: int, s: int, x: float) -> float:
    if m * s < 2:
        raise UndefinedMainTermError(f"zeta_K(m s) diverges for m={m}, s={s}")
    return (field.residue_c * x) ** m / _zeta_at(field, m * s)


def error_term(field: FieldSpec, m: int, s: int, x: float, count: int) -> float:
    """E = count - (c x)^m / zeta_K(m s), with the real x in the main term."""
    return count - main_term(field, m, s, x)


def geometric_grid(x_min: float, x_max: float, ratio: float | None = None) -> List[float]:
    if ratio is None:
        ratio = setting("VLP_GRID_RATIO")
    if ratio <= 1:
        raise DomainError("grid ratio must exceed 1")
    if x_min <= 0 or x_max < x_min:
        raise DomainError("need 0 < x_min <= x_max")
    xs = []
    k = 0
    while True:
        x = x_min * ratio ** k
        if x > x_max * (1 + 1e-12):
            break
        xs.append(min(x, x_max))
        k += 1
    return xs


def count_series(field: FieldSpec, m: int, s: int, xs: Sequence[float],
                 workers: int = 1, tables: Tables | None = None) -> CountSeries:
    """V_m^s on a grid; for m s = 1 the main term is its limit 0."""
    if tables is None:
        tables = get_tables(field, max(1, math.floor(max(xs))), workers=workers)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        counts = list(pool.map(lambda x: sprime_count(tables, m, s, x), xs))
    if m * s >= 2:
        mains = [main_term(field, m, s, x) for x in xs]
    else:
        mains = [0.0 for _ in xs]
    errors = [v - mt for v, mt in zip(counts, mains)]
    kind = "visible" if s == 1 else "sprime"
    return CountSeries(field=field, m=m, s=s, xs=list(xs), counts=counts,
                       main_terms=mains, errors=errors, kind=kind)


def ideal_series(field: FieldSpec, xs: Sequence[float], workers: int = 1,
                 tables: Tables | None = None) -> CountSeries:
    """j_K(x) against c x on a grid."""
    if tables is None:
        tables = get_tables(field, max(1, math.floor(max(xs))), workers=workers)
    coefficients = tables[0]
    counts = [coefficients.j(x) for x in xs]
    mains = [field.residue_c * x for x in xs]
    errors = [v - mt for v, mt in zip(counts, mains)]
    return CountSeries(field=field, m=1, s=1, xs=list(xs), counts=counts,
                       main_terms=mains, errors=errors, kind="ideals")


# brute-force oracle

def _prime_ideals(field: FieldSpec, X: int) -> List[Tuple[PrimeLabel, int]]:
    out: List[Tuple[PrimeLabel, int]] = []
    for p in primes_upto(X).tolist():
        if field.is_rational:
            out.append(((p, 0), p))
            continue
        kind = splitting_type(field, p)
        if kind is SplittingType.SPLIT:
            out += [((p, 0), p), ((p, 1), p)]
        elif kind is SplittingType.INERT:
            if p * p <= X:
                out.append(((p, 0), p * p))
        else:
            out.append(((p, 0), p))
    out.sort(key=lambda item: (item[1], item[0]))
    return out


def enumerate_ideals(field: FieldSpec, X: int) -> IdealList:
    """All ideals of norm <= X as exponent vectors over prime ideals."""
    cap = setting("VLP_ORACLE_MAX_NORM")
    if X > cap:
        raise CapacityError(f"oracle enumeration is capped at norm {cap}, got {X}")
    primes = _prime_ideals(field, X)
    found: List[Ideal] = []

    def extend(start: int, norm: int, factors: Tuple[Tuple[PrimeLabel, int], ...]) -> None:
        found.append(Ideal(norm=norm, factors=factors))
        for i in range(start, len(primes)):
            label, q = primes[i]
            if norm * q > X:
                break
            nn, e = norm * q, 1
            while nn <= X:
                extend(i + 1, nn, factors + ((label, e),))
                nn *= q
                e += 1

    if X >= 1:
        extend(0, 1, ())
    found.sort(key=lambda ideal: (ideal.norm, ideal.factors))
    return IdealList(field=field, limit=X, ideals=found)


def brute_force_counts_upto(field: FieldSpec, m: int, s: int, X: int) -> np.ndarray:
    """out[k] = number of relatively s-prime m-tuples with all norms <= k, k <= X.

    A tuple fails when some prime ideal divides every entry to at least the
    s-th power. Tuples are checked two entries at a time with a matrix
    product over the prime-ideal columns.
    """
    if m < 1 or s < 1:
        raise DomainError("m and s must be positive")
    ideals = enumerate_ideals(field, X).ideals
    n = len(ideals)
    budget = setting("VLP_ORACLE_TUPLE_BUDGET")
    if n ** m > budget:
        raise CapacityError(f"{n}^{m} tuples exceed the oracle budget {budget}")
    hist = np.zeros(X + 1, dtype=np.int64)
    if n == 0:
        return hist
    labels = sorted({label for ideal in ideals for label, _ in ideal.factors})
    column = {label: i for i, label in enumerate(labels)}
    deep = np.zeros((n, max(1, len(labels))), dtype=np.float32)
    for row, ideal in enumerate(ideals):
        for label, e in ideal.factors:
            if e >= s:
                deep[row, column[label]] = 1.0
    norms = np.array([ideal.norm for ideal in ideals], dtype=np.int64)

    if m == 1:
        good = deep.sum(axis=1) == 0
        hist += np.bincount(norms[good], minlength=X + 1)
    else:
        pair_max = np.maximum.outer(norms, norms)
        for prefix in itertools.product(range(n), repeat=m - 2):
            mask = np.ones(deep.shape[1], dtype=np.float32)
            top = 0
            for i in prefix:
                mask = mask * deep[i]
                top = max(top, int(norms[i]))
            shared = (deep * mask) @ deep.T
            good = shared == 0
            hist += np.bincount(np.maximum(pair_max[good], top), minlength=X + 1)
    return np.cumsum(hist)


def brute_force_count(field: FieldSpec, m: int, s: int, X: int) -> int:
    return int(brute_force_counts_upto(field, m, s, X)[X])


def oracle_compare(field: FieldSpec, m: int, s: int, X: int,
                   tables: Optional[Tables] = None) -> dict:
    if tables is None:
        tables = get_tables(field, max(1, X))
    formula = sprime_count(tables, m, s, X)
    brute = brute_force_count(field, m, s, X)
    return {"formula": formula, "brute_force": brute, "equal": formula == brute}
