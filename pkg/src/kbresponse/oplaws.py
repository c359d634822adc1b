"""Operational laws and closed-form responsiveness estimates.

Everything here is direct arithmetic on a :class:`SystemSummary`; the only
iterative computation (exact elapsed time) lives in :mod:`kbresponse.mva`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import InvalidArgument
from .model import SystemSummary

Source = Literal["approximate", "exact"]


@dataclass(frozen=True)
class ResponsivenessPoint:
    window_n: int | None
    elapsed: float
    responsiveness: float
    source: Source

    @property
    def percent(self) -> float:
        return 100.0 * self.responsiveness


@dataclass(frozen=True)
class CriticalPoints:
    n_star: int
    m_star: int


def _nonneg(name, value):
    if value < 0 or math.isnan(value):
        raise InvalidArgument(f"{name} must be nonnegative, got {value!r}")


def _count(name, value, minimum=0):
    if isinstance(value, bool) or int(value) != value:
        raise InvalidArgument(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidArgument(f"{name} must be >= {minimum}, got {value!r}")
    return int(value)


def utilization(throughput: float, service_time: float) -> float:
    """Utilization law: busy fraction = throughput * service time.

    Not clamped. A result above 1 means the inputs describe an infeasible
    operating point, and callers report it as saturated.
    """
    _nonneg("throughput", throughput)
    _nonneg("service_time", service_time)
    return throughput * service_time


def throughput_bounds(summary: SystemSummary) -> tuple[float, float]:
    return summary.gamma_min, summary.gamma_max


def elapsed_asymptotic(summary: SystemSummary, window_n: int) -> float:
    """Saturation estimate of elapsed time via Little's law, ``N * s_max``."""
    n = _count("window_n", window_n)
    return n * summary.s_max


def responsiveness_exact(
    summary: SystemSummary, elapsed: float, window_n: int | None = None
) -> ResponsivenessPoint:
    _nonneg("elapsed", elapsed)
    r = summary.sigma / (summary.sigma + elapsed)
    return ResponsivenessPoint(window_n, float(elapsed), r, "exact")


def responsiveness_approx(summary: SystemSummary, window_n: int) -> ResponsivenessPoint:
    n = _count("window_n", window_n)
    elapsed = n * summary.s_max
    r = summary.sigma / (summary.sigma + elapsed)
    return ResponsivenessPoint(n, elapsed, r, "approximate")


def responsiveness_table(
    summary: SystemSummary, n_from: int, n_to: int
) -> list[ResponsivenessPoint]:
    lo = _count("n_from", n_from)
    hi = _count("n_to", n_to)
    if lo > hi:
        raise InvalidArgument(f"empty range {lo}..{hi}")
    return [responsiveness_approx(summary, n) for n in range(lo, hi + 1)]


def _ceil(x: float) -> int:
    # guard against 10.000000000000002 style accumulation noise
    nearest = round(x)
    if math.isclose(x, nearest, rel_tol=1e-12, abs_tol=0.0):
        return int(nearest)
    return math.ceil(x)


def critical_request_count(summary: SystemSummary, transactions: int) -> int:
    """Critical window size N*.

    The ratio sigma/s_max is rounded up *before* scaling by the session
    length; doing it the other way round gives 106 instead of 110 for the
    Table 1 workload.
    """
    n = _count("transactions", transactions, minimum=1)
    return _ceil(summary.sigma / summary.s_max) * n


def critical_user_count(
    n_star: int, think_time: float, transactions: int, s_max: float
) -> int:
    if not s_max > 0:
        raise InvalidArgument(f"s_max must be positive, got {s_max!r}")
    n_star = _count("n_star", n_star)
    _nonneg("think_time", think_time)
    n = _count("transactions", transactions, minimum=1)
    return n_star + _ceil(think_time * n / s_max)


def critical_points(
    summary: SystemSummary, think_time: float, transactions: int
) -> CriticalPoints:
    n_star = critical_request_count(summary, transactions)
    return CriticalPoints(
        n_star, critical_user_count(n_star, think_time, transactions, summary.s_max)
    )


def input_rate(
    workstations_m: int, window_n: int, think_time: float, transactions: int
) -> float:
    """Mean request rate offered by the ``M - N`` thinking users.

    Each thinking user issues one session of ``transactions`` requests per
    think period, grouped as ``(M - N) / (T * n)``.
    """
    m = _count("workstations_m", workstations_m)
    n_active = _count("window_n", window_n)
    n = _count("transactions", transactions, minimum=1)
    if not think_time > 0:
        raise InvalidArgument(f"think time must be positive, got {think_time!r}")
    if m < n_active:
        raise InvalidArgument(f"M={m} is smaller than N={n_active}")
    return (m - n_active) / (think_time * n)
