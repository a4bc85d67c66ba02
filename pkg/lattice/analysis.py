"""Log-log exponent fits of error series and the bounds they are read against."""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from .circle import CircleScan
from .counts import CountSeries
from .exceptions import FitRefusedError

log = logging.getLogger("lattice")

MIN_POINTS = 8
# best known upper exponent for the circle problem (131/416)
HUXLEY = 131 / 416
HARDY_LANDAU = 0.25
SLOPE_SLACK = 0.15


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int
    dropped_zeros: int

    def as_dict(self) -> dict:
        return asdict(self)


def fit_exponent(series: Iterable[Tuple[float, float]]) -> ExponentFit:
    """OLS of log|v| on log x; zero values are dropped and counted."""
    pairs = [(float(x), float(v)) for x, v in series]
    xs = np.array([x for x, _ in pairs])
    if xs.size > 1 and np.any(np.diff(xs) <= 0):
        raise FitRefusedError("x values must be strictly increasing")
    if np.any(xs <= 0):
        raise FitRefusedError("x values must be positive")
    vs = np.array([v for _, v in pairs])
    keep = vs != 0
    dropped = int(np.count_nonzero(~keep))
    n = int(np.count_nonzero(keep))
    if n < MIN_POINTS:
        raise FitRefusedError(f"{n} usable points; at least {MIN_POINTS} are needed")
    log_x = np.log(xs[keep])
    log_v = np.log(np.abs(vs[keep]))
    result = linregress(log_x, log_v)
    r_squared = 1.0 if np.ptp(log_v) == 0 else float(result.rvalue) ** 2
    return ExponentFit(slope=float(result.slope), intercept=float(result.intercept),
                       r_squared=r_squared, n_points=n, dropped_zeros=dropped)


def read_series_csv(path: str, xcol: str, vcol: str) -> list[Tuple[float, float]]:
    data = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding="utf-8")
    names = data.dtype.names or ()
    for col in (xcol, vcol):
        if col not in names:
            raise FitRefusedError(f"column {col!r} not found in {path}")
    data = np.atleast_1d(data)
    return list(zip(data[xcol].astype(float).tolist(), data[vcol].astype(float).tolist()))


def exponent_bounds(d: int, degree: int, m: int, s: int, kind: str) -> dict:
    """Exponents the error series is compared against.

    ``bound_conditional`` assumes the extended Lindelof hypothesis,
    ``bound_unconditional`` is the known bound m - 1/[K:Q], and
    ``bound_window`` is the circle-problem window carried over to Q(sqrt(-1)).
    """
    bounds: dict = {}
    window = None
    if kind == "ideals":
        bounds["bound_conditional"] = 0.5
        if d == -1:
            window = (HARDY_LANDAU, HUXLEY)
    elif m * s >= 2:
        bounds["bound_conditional"] = 0.75 if (m, s) == (1, 2) else m - 0.5
        if s == 1:
            bounds["bound_unconditional"] = m - 1 / degree
            bounds["bound_unconditional_log"] = m == 2
        if d == -1:
            if m >= 3 or (m == 2 and s >= 2):
                window = (m - 1 + HARDY_LANDAU, m - 1 + HUXLEY)
            elif m == 2:
                window = (1 + HARDY_LANDAU, 1 + HUXLEY)
                bounds["bound_window_log"] = True
            elif s <= 4:
                window = ((1 + HARDY_LANDAU) / s, (1 + HUXLEY) / s)
                bounds["bound_window_interpretation"] = "r read as s"
                bounds["bound_window_asserted"] = False
            else:
                window = (HARDY_LANDAU, HUXLEY)
    if window is not None:
        bounds["bound_window"] = list(window)
    if "bound_conditional" in bounds:
        bounds["ceiling"] = bounds["bound_conditional"] + SLOPE_SLACK
    return bounds


def _grid_summary(xs: Sequence[float]) -> dict:
    summary = {"points": len(xs), "x_min": min(xs), "x_max": max(xs)}
    if len(xs) > 1 and xs[0] > 0:
        summary["ratio"] = xs[1] / xs[0]
    return summary


def make_report(series: CountSeries | CircleScan, fit: ExponentFit) -> dict:
    if isinstance(series, CircleScan):
        report = {
            "kind": "circle",
            "grid": _grid_summary(series.r_values),
            "fit": fit.as_dict(),
            "bound_window": [HARDY_LANDAU, HUXLEY],
            "ceiling": HUXLEY + SLOPE_SLACK,
        }
    else:
        if len(series.xs) != len(series.errors):
            raise ValueError("series columns have different lengths")
        field = series.field
        report = {
            "kind": series.kind,
            "field": field.label,
            "d": field.d,
            "m": series.m,
            "s": series.s,
            "grid": _grid_summary(series.xs),
            "fit": fit.as_dict(),
        }
        report.update(exponent_bounds(field.d, field.degree, series.m, series.s, series.kind))
    if "ceiling" in report:
        report["within_ceiling"] = bool(fit.slope <= report["ceiling"])
    if not math.isfinite(fit.slope):
        log.warning("non-finite slope in %s report", report["kind"])
    return report
