"""Exact single-class Mean Value Analysis for the cyclic network.

Every server is a load-independent FCFS queue visited once per cycle, with
an optional delay stage of mean ``think_time`` (the users' terminals).
Exactness holds under the usual product-form assumptions (exponential FCFS
service); the recursion itself is finite, no convergence loop involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InvalidArgument
from .model import ServiceProfile


@dataclass(frozen=True, eq=False)
class MvaSolution:
    """Trace of the recursion for populations ``1..max_population``.

    Row ``n - 1`` of ``waits`` and ``queues`` holds the per-server residence
    times and mean queue lengths at population ``n``.
    """

    service_times: np.ndarray
    think_time: float
    waits: np.ndarray
    queues: np.ndarray
    throughput: np.ndarray
    elapsed: np.ndarray

    @property
    def max_population(self) -> int:
        return len(self.throughput)

    @property
    def populations(self) -> range:
        return range(1, self.max_population + 1)

    def utilizations(self, n: int) -> np.ndarray:
        return self.throughput[_row(self, n)] * self.service_times


def _row(solution: MvaSolution, n: int) -> int:
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= solution.max_population:
        raise IndexOutOfRange(n, solution.max_population, what="population")
    return int(n) - 1


def solve_mva(
    profile: ServiceProfile, max_population: int, think_time: float = 0.0
) -> MvaSolution:
    if isinstance(max_population, bool) or int(max_population) != max_population:
        raise InvalidArgument(f"max_population must be an integer, got {max_population!r}")
    if max_population < 1:
        raise InvalidArgument(f"max_population must be >= 1, got {max_population}")
    if not think_time >= 0:
        raise InvalidArgument(f"think time must be nonnegative, got {think_time!r}")

    s = np.asarray(profile.service_times, dtype=float)
    big_n = int(max_population)
    waits = np.empty((big_n, s.size))
    queues = np.empty((big_n, s.size))
    x = np.empty(big_n)

    q = np.zeros(s.size)
    for n in range(1, big_n + 1):
        w = s * (1.0 + q)
        x_n = n / (think_time + w.sum())
        q = x_n * w
        waits[n - 1] = w
        queues[n - 1] = q
        x[n - 1] = x_n

    return MvaSolution(
        service_times=s,
        think_time=float(think_time),
        waits=waits,
        queues=queues,
        throughput=x,
        elapsed=waits.sum(axis=1),
    )


def elapsed_exact(solution: MvaSolution, n: int) -> float:
    return float(solution.elapsed[_row(solution, n)])


def throughput_at(solution: MvaSolution, n: int) -> float:
    return float(solution.throughput[_row(solution, n)])


def throughput_curve(
    profile: ServiceProfile, max_population: int, think_time: float = 0.0
) -> list[tuple[int, float]]:
    sol = solve_mva(profile, max_population, think_time)
    return [(n, float(x)) for n, x in zip(sol.populations, sol.throughput)]
