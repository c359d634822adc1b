"""Domain types for the cyclic network S_1 -> S_2 -> ... -> S_K -> S_1.

Server indices are 1-based on every public surface; the last server is the
knowledge-base host.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Iterable, Optional

from .errors import EmptyProfile, IndexOutOfRange, InvalidArgument, InvalidServiceTime


@dataclass(frozen=True)
class ServiceProfile:
    """Mean service times in seconds, one per server, host last."""

    service_times: tuple[float, ...]

    def __post_init__(self):
        times = tuple(self.service_times)
        if not times:
            raise EmptyProfile()
        for i, s in enumerate(times, start=1):
            if isinstance(s, bool) or not isinstance(s, Real):
                raise InvalidServiceTime(i, s)
            if not math.isfinite(s) or s <= 0:
                raise InvalidServiceTime(i, s)
        object.__setattr__(self, "service_times", tuple(float(s) for s in times))

    @property
    def k(self) -> int:
        return len(self.service_times)

    def __len__(self):
        return len(self.service_times)

    def __iter__(self):
        return iter(self.service_times)

    def __getitem__(self, index: int) -> float:
        """1-based access: ``profile[1]`` is s_1."""
        return self.service_times[_check_index(index, self.k) - 1]


@dataclass(frozen=True)
class SystemSummary:
    sigma: float
    s_max: float
    bottleneck_index: int
    gamma_min: float
    gamma_max: float
    k: int


@dataclass(frozen=True)
class WorkloadSpec:
    """User-side parameters.

    ``window_n`` and ``workstations_m`` are optional because model files
    describe the population only through think time and session length.
    """

    think_time: float = 0.0
    transactions: int = 1
    window_n: Optional[int] = None
    workstations_m: Optional[int] = None

    def __post_init__(self):
        if not math.isfinite(self.think_time) or self.think_time < 0:
            raise InvalidArgument(f"think time must be nonnegative, got {self.think_time!r}")
        if isinstance(self.transactions, bool) or int(self.transactions) != self.transactions:
            raise InvalidArgument(f"transactions must be an integer, got {self.transactions!r}")
        if self.transactions < 1:
            raise InvalidArgument(f"transactions per session must be >= 1, got {self.transactions}")
        for name in ("window_n", "workstations_m"):
            value = getattr(self, name)
            if value is not None and (int(value) != value or value < 0):
                raise InvalidArgument(f"{name} must be a nonnegative integer, got {value!r}")
        if (
            self.window_n is not None
            and self.workstations_m is not None
            and self.window_n > self.workstations_m
        ):
            raise InvalidArgument(
                f"window size N={self.window_n} exceeds workstations M={self.workstations_m}"
            )


def _check_index(index, k: int) -> int:
    if isinstance(index, bool) or int(index) != index or not 1 <= index <= k:
        raise IndexOutOfRange(index, k)
    return int(index)


def validate_profile(raw_times: Iterable[float]) -> ServiceProfile:
    return ServiceProfile(tuple(raw_times))


def summarize(profile: ServiceProfile) -> SystemSummary:
    times = profile.service_times
    sigma = math.fsum(times)
    s_max = max(times)
    # list.index returns the first occurrence, which is the tie rule we want
    bottleneck = times.index(s_max) + 1
    return SystemSummary(
        sigma=sigma,
        s_max=s_max,
        bottleneck_index=bottleneck,
        gamma_min=1.0 / sigma,
        gamma_max=1.0 / s_max,
        k=profile.k,
    )


def swap_servers(profile: ServiceProfile, i: int, j: int) -> ServiceProfile:
    i = _check_index(i, profile.k)
    j = _check_index(j, profile.k)
    times = list(profile.service_times)
    times[i - 1], times[j - 1] = times[j - 1], times[i - 1]
    return ServiceProfile(tuple(times))


def ranked_servers(profile: ServiceProfile) -> list[tuple[int, float]]:
    """Servers from slowest to fastest as ``(index, service_time)`` pairs."""
    indexed = enumerate(profile.service_times, start=1)
    return sorted(indexed, key=lambda pair: (-pair[1], pair[0]))


def remove_server(profile: ServiceProfile, index: int) -> ServiceProfile:
    index = _check_index(index, profile.k)
    times = profile.service_times
    return ServiceProfile(times[: index - 1] + times[index:])


def scaled(profile: ServiceProfile, factor: float) -> ServiceProfile:
    return ServiceProfile(tuple(s * factor for s in profile.service_times))


__all__ = [
    "ServiceProfile",
    "SystemSummary",
    "WorkloadSpec",
    "validate_profile",
    "summarize",
    "swap_servers",
    "ranked_servers",
    "remove_server",
    "scaled",
]
