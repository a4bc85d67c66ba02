"""Gauss circle counts N(r) = #{(x, y) in Z^2 : x^2 + y^2 <= r}.

Here r is the squared radius. Only floor(r) matters, and all square roots
are integer-exact.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .exceptions import DomainError, IdentityViolation, OutOfRangeError, UnsupportedFieldError
from .sieve import CoefficientTable

log = logging.getLogger("lattice")

_ISQRT_MAX = 2 ** 62


@dataclass
class CircleScan:
    r_values: List[float]
    N: List[int]
    residuals: List[float]

    def rows(self):
        return zip(self.r_values, self.N, self.residuals)


def isqrt_array(v: np.ndarray) -> np.ndarray:
    """floor(sqrt(v)) elementwise, exact for 0 <= v <= 2^62."""
    v = np.asarray(v, dtype=np.int64)
    if v.size and (v.min() < 0 or v.max() > _ISQRT_MAX):
        raise DomainError("isqrt_array needs 0 <= v <= 2^62")
    y = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    while True:
        high = y * y > v
        if not high.any():
            break
        y[high] -= 1
    while True:
        low = (y + 1) * (y + 1) <= v
        if not low.any():
            break
        y[low] += 1
    return y


def circle_count(r: float) -> int:
    if r < 0:
        raise DomainError("r must be non-negative")
    R = math.floor(r)
    s = math.isqrt(R)
    xs = np.arange(1, s + 1, dtype=np.int64)
    columns = 2 * isqrt_array(R - xs * xs) + 1
    return int(2 * math.isqrt(R) + 1 + 2 * int(columns.sum()))


def circle_counts_upto(r_max: int) -> np.ndarray:
    """N(r) for every integer 0 <= r <= r_max from one lattice enumeration."""
    if r_max < 0:
        raise DomainError("r_max must be non-negative")
    s = math.isqrt(r_max)
    norms = []
    weights = []
    for x in range(0, s + 1):
        ys = np.arange(0, math.isqrt(r_max - x * x) + 1, dtype=np.int64)
        norms.append(x * x + ys * ys)
        # (±x, ±y) images of a first-quadrant point
        w = np.where(ys == 0, 2, 4) if x else np.where(ys == 0, 1, 2)
        weights.append(w)
    hits = np.bincount(np.concatenate(norms), weights=np.concatenate(weights),
                       minlength=r_max + 1)
    return np.cumsum(hits.astype(np.int64))


def check_circle_ideal_identity(table: CoefficientTable, r_max: int) -> dict:
    """N(r) = 4 j_{Q(i)}(r) + 1 for 1 <= r <= r_max (the +1 is the origin)."""
    if table.field.d != -1:
        raise UnsupportedFieldError("the circle identity holds for Q(sqrt(-1)) only")
    if r_max > table.limit:
        raise OutOfRangeError(f"r_max={r_max} is beyond the table limit {table.limit}")
    N = circle_counts_upto(r_max)
    rhs = 4 * table.j_cum[:r_max + 1] + 1
    bad = np.flatnonzero(N[1:] != rhs[1:])
    if bad.size:
        r = int(bad[0]) + 1
        raise IdentityViolation(
            f"N({r}) = {int(N[r])} but 4 j({r}) + 1 = {int(rhs[r])}", r=r)
    anchor = min(10, r_max)
    return {
        "r_max": r_max,
        "checked": r_max,
        "ok": True,
        "anchor": {"r": anchor, "N": int(N[anchor]), "j": int(table.j_cum[anchor])},
    }


def _scan(r_values: Sequence[float], N: Sequence[int]) -> CircleScan:
    residuals = [n - math.pi * r for r, n in zip(r_values, N)]
    return CircleScan(r_values=list(r_values), N=list(N), residuals=residuals)


def residual_scan(r_max: int, stride: int = 1) -> CircleScan:
    """N(r) - pi r at r = stride, 2 stride, ... <= r_max."""
    if r_max < 1 or stride < 1:
        raise DomainError("need r_max >= 1 and stride >= 1")
    N = circle_counts_upto(r_max)
    rs = list(range(stride, r_max + 1, stride))
    return _scan(rs, [int(N[r]) for r in rs])


def scan_radii(r_values: Sequence[float], workers: int = 1) -> CircleScan:
    """Residuals at arbitrary radii, one exact count per point."""
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        N = list(pool.map(circle_count, r_values))
    return _scan(r_values, N)
