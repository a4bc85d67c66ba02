"""zeta(m), L(m, chi) and zeta_K(m) for real m > 1, and zeta_K on sigma >= 2.

Values at real m are obtained from Hurwitz zeta values with Euler-Maclaurin
summation, L(m, chi) = q^-m sum_r chi(r) zeta(m, r/q); for real arguments the
Euler-Maclaurin remainder is bounded by the first omitted term, which is
what ``tail_bound`` reports.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli, factorial, poch

from .conf import setting
from .exceptions import DomainError, NumericFailure
from .fields import FieldSpec, character_mod
from .table_cache import get_coefficients

log = logging.getLogger("lattice")

_EM_TERMS = 6


@dataclass(frozen=True)
class ZetaValue:
    value: float
    tail_bound: float
    terms_used: int


@dataclass(frozen=True)
class LineValue:
    value: complex
    tail_bound: float
    terms_used: int


def _hurwitz(s: float, a: np.ndarray, N: int) -> tuple[np.ndarray, float]:
    """zeta(s, a) for every a in ``a`` (all in (0, 1]) and a common error bound."""
    k = np.arange(N, dtype=np.float64)
    head = np.array([math.fsum((k + ai) ** -s) for ai in a])
    z = N + a
    value = head + z ** (1 - s) / (s - 1) + 0.5 * z ** -s
    b = bernoulli(2 * _EM_TERMS + 2)
    for j in range(1, _EM_TERMS + 1):
        value += b[2 * j] / factorial(2 * j) * poch(s, 2 * j - 1) * z ** (-s - 2 * j + 1)
    j = _EM_TERMS + 1
    omitted = abs(b[2 * j] / factorial(2 * j) * poch(s, 2 * j - 1)) * float(np.min(z)) ** (-s - 2 * j + 1)
    return value, float(omitted)


def _check_tol(tol: float | None) -> float:
    if tol is None:
        tol = setting("VLP_CONSTANT_TOL")
    if tol <= 0:
        raise ValueError("tol must be positive")
    return tol


def _zeta_and_l(field: FieldSpec, m: float, N: int):
    z_val, z_err = _hurwitz(m, np.array([1.0]), N)
    zeta_value = float(z_val[0])
    if field.is_rational:
        return zeta_value, z_err, 1.0, 0.0
    chi = character_mod(field).astype(np.float64)
    q = len(chi)
    residues = np.arange(1, q + 1, dtype=np.float64)
    h_val, h_err = _hurwitz(m, residues / q, N)
    weights = np.roll(chi, -1)
    l_val = math.fsum(weights * h_val) / q ** m
    l_err = float(np.sum(np.abs(weights))) * h_err / q ** m
    return zeta_value, z_err, l_val, l_err


def l_value(field: FieldSpec, m: float, tol: float | None = None) -> ZetaValue:
    tol = _check_tol(tol)
    if m <= 1:
        raise DomainError(f"L(m, chi) is only evaluated for m > 1, got m={m}")
    if field.is_rational:
        return ZetaValue(value=1.0, tail_bound=0.0, terms_used=1)
    N = 8
    value = err = math.nan
    while N <= setting("VLP_ZETA_MAX_TERMS"):
        _, _, value, err = _zeta_and_l(field, m, N)
        if err < tol:
            return ZetaValue(value=value, tail_bound=err, terms_used=N * abs(field.disc))
        N *= 2
    raise NumericFailure(f"L({m}, chi_{field.disc}) did not converge", partial=value, bound=err)


def zeta_K_at(field: FieldSpec, m: float, tol: float | None = None) -> ZetaValue:
    """zeta_K(m) = zeta(m) L(m, chi) for real m > 1."""
    tol = _check_tol(tol)
    if m <= 1:
        raise DomainError(f"zeta_K diverges at m={m}; need m > 1")
    N = 8
    value = math.nan
    bound = math.inf
    while N <= setting("VLP_ZETA_MAX_TERMS"):
        z, z_err, lv, l_err = _zeta_and_l(field, m, N)
        value = z * lv
        bound = abs(z) * l_err + abs(lv) * z_err + z_err * l_err
        if bound < tol:
            terms = N * (1 if field.is_rational else 1 + abs(field.disc))
            return ZetaValue(value=value, tail_bound=bound, terms_used=terms)
        N *= 2
    log.warning("zeta_K(%s) for %s stopped at bound %.3g", m, field.label, bound)
    raise NumericFailure(f"zeta_K({m}) did not reach tol={tol}", partial=value, bound=bound)


def line_tail_bound(field: FieldSpec, sigma: float, N: int) -> float:
    """Bound on sum_{n > N} a(n) n^-sigma, uniform in t.

    Uses a(n) <= d(n) and sum_{n <= x} d(n) <= x (log x + 1).
    """
    s1 = sigma - 1
    head = N ** (-s1)
    if field.is_rational:
        return head / s1
    return sigma * head * (math.log(N) / s1 + 1 / s1 ** 2 + 1 / s1)


def zeta_K_line(field: FieldSpec, sigma: float, t: float, N: int | None = None,
                tol: float | None = None) -> LineValue:
    """Truncated Dirichlet series sum_{n <= N} a(n) n^-(sigma + i t).

    Without an explicit N, N is doubled until the tail bound is below tol.
    """
    if sigma < 2:
        raise DomainError(f"vertical lines are only evaluated for sigma >= 2, got {sigma}")
    if N is None:
        tol = setting("VLP_LINE_TOL") if tol is None else tol
        N = 64
        while line_tail_bound(field, sigma, N) >= tol:
            N *= 2
    table = get_coefficients(field, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    log_n = np.log(n)
    terms = table.a[1:N + 1] * np.exp(-sigma * log_n) * np.exp(-1j * t * log_n)
    return LineValue(value=complex(np.sum(terms)), tail_bound=line_tail_bound(field, sigma, N),
                     terms_used=N)
