"""Numerical checks of the truncated Perron integral on the line Re(s) = 2.

kernel_quadrature evaluates (1/2 pi i) int_{2-iT}^{2+iT} x^s / s ds.
perron_j_reconstruction sums that kernel over the Dirichlet coefficients of
zeta_K, which by linearity is the Perron integral of the truncated series,
and compares it with j_K(x) from the sieve.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import quad_vec

from .conf import setting
from .exceptions import DomainError, NumericFailure
from .fields import FieldSpec
from .sieve import j_K
from .table_cache import get_coefficients

log = logging.getLogger("lattice")

SIGMA = 2.0
# truncation constant: |I - [x > 1]| <= KERNEL_K x^2 / (T |log x|)
KERNEL_K = 1 / math.pi
_MAX_PANEL = 2.0
# absolute tolerance per unit of sum |w| r^SIGMA
_KERNEL_TOL = 1e-10
# evaluations per Gauss-Kronrod panel
_GK_NODES = 21


@dataclass
class PerronResult:
    x: float
    T: float
    estimate: complex
    reference: float
    abs_error: float
    nodes: int
    bound: float | None = None

    def as_dict(self) -> dict:
        data = asdict(self)
        data["estimate"] = self.estimate.real
        data["estimate_imag"] = self.estimate.imag
        return data


def panel_width(log_ratios: np.ndarray, T: float, nodes: int = 64) -> float:
    """A quarter period of the fastest oscillation r^{it}, at most 2 and at most 2T/(nodes/21)."""
    top = float(np.max(np.abs(log_ratios))) if len(log_ratios) else 0.0
    width = _MAX_PANEL if top == 0 else min(_MAX_PANEL, math.pi / (2 * top))
    return min(width, 2 * T * _GK_NODES / nodes)


def line_integral(ratios, weights, T: float, *, nodes: int = 64,
                  tol: float = _KERNEL_TOL) -> tuple[complex, int]:
    """sum_k w_k (1/2 pi i) int_{2-iT}^{2+iT} r_k^s / s ds with scipy's quad_vec.

    The line is cut into panels of ``panel_width`` and handed to the
    adaptive GK21 rule as breakpoints. The tolerance scales with
    sum |w| r^2, the size of the integrand near t = 0. Exceeding
    ``VLP_PERRON_NODE_BUDGET`` raises NumericFailure with the partial sum.
    """
    log_r = np.log(np.asarray(ratios, dtype=np.float64))
    w = np.asarray(weights, dtype=np.float64)
    scale = max(1.0, float(np.sum(np.abs(w) * np.exp(SIGMA * log_r))))
    width = panel_width(log_r, T, nodes)
    points = np.arange(-T + width, T, width)
    budget = setting("VLP_PERRON_NODE_BUDGET")

    def integrand(t: float) -> np.ndarray:
        s = SIGMA + 1j * t
        value = np.dot(w, np.exp(s * log_r)) / s / (2 * math.pi)
        return np.array([value.real, value.imag])

    res, err, info = quad_vec(integrand, -T, T, epsabs=tol * scale, epsrel=0, norm="max",
                              limit=max(2, budget // _GK_NODES), points=points,
                              quadrature="gk21", full_output=True)
    estimate = complex(res[0], res[1])
    if info.status != 0:
        log.warning("quadrature on [%g, %g] stopped after %d nodes: %s", -T, T,
                    info.neval, info.message)
        raise NumericFailure(f"quadrature did not converge: {info.message}",
                             partial=estimate, bound=float(err))
    log.debug("quadrature on [%g, %g]: %d nodes over %d panels, error %.3g", -T, T,
              info.neval, len(info.intervals), err)
    return estimate, int(info.neval)


def kernel_bound(x: float, T: float) -> float:
    if x == 1:
        return 2 / (math.pi * T)
    return KERNEL_K * x * x / (T * abs(math.log(x)))


def kernel_quadrature(x: float, T: float, nodes: int = 64, tol: float = _KERNEL_TOL) -> PerronResult:
    """(1/2 pi i) int over [2 - iT, 2 + iT] of x^s / s ds; reference [x > 1] (1/2 at x = 1)."""
    if x <= 0 or T <= 0:
        raise DomainError("need x > 0 and T > 0")
    if nodes < 64:
        raise DomainError("at least 64 quadrature nodes are required")
    estimate, used = line_integral([x], [1.0], T, nodes=nodes, tol=tol)
    reference = 1.0 if x > 1 else 0.0 if x < 1 else 0.5
    return PerronResult(x=x, T=T, estimate=estimate, reference=reference,
                        abs_error=abs(estimate - reference), nodes=used,
                        bound=kernel_bound(x, T))


def perron_j_reconstruction(field: FieldSpec, x: float, T: float | None = None) -> PerronResult:
    """sum_n a(n) times the kernel at x/n, against j_K(x); T defaults to x^3."""
    if x < 1.5 or (2 * x) != int(2 * x) or int(2 * x) % 2 != 1:
        raise DomainError(f"x must be a half-integer n + 1/2 with n >= 1, got {x}")
    if T is None:
        T = x ** 3
    cut = max(math.ceil(2 * x), math.ceil(setting("VLP_PERRON_CUT_FACTOR") * x))
    table = get_coefficients(field, cut)
    ns = np.flatnonzero(table.a[1:cut + 1]) + 1
    estimate, used = line_integral(x / ns, table.a[ns], T)
    reference = float(j_K(table, x))
    log.debug("Perron reconstruction of j(%s) for %s: %.6f vs %d", x, field.label,
              estimate.real, reference)
    return PerronResult(x=x, T=T, estimate=estimate, reference=reference,
                        abs_error=abs(estimate - reference), nodes=used)
