"""Host / flow-equivalent-server decomposition.

The K-1 relaying servers are aggregated into one load-dependent server
whose rate with ``j`` requests present is the subnetwork's closed MVA
throughput at population ``j``. Solving the two-station network {FES, host}
with load-dependent MVA reproduces the full network's throughput exactly
for product-form networks, which is what the tests lean on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CurveTooShort, DegenerateDecomposition, InvalidArgument
from .model import ServiceProfile, ranked_servers, remove_server, _check_index
from .mva import solve_mva

DEFAULT_FRACTION = 0.75


@dataclass(frozen=True)
class FesCurve:
    rates: tuple[float, ...]
    gamma_star: float

    @property
    def max_population(self) -> int:
        return len(self.rates)

    def rate(self, j: int) -> float:
        if not 1 <= j <= len(self.rates):
            raise CurveTooShort(j, len(self.rates))
        return self.rates[j - 1]


@dataclass(frozen=True)
class FlowBalanceReport:
    host_service: float
    subnet_bottleneck: float
    gamma_e_star: float
    assumed_fraction: float
    lambda_k: float
    rho_k_new: float
    mode: str = "heuristic"
    host_index: Optional[int] = None

    @property
    def steady_state(self) -> bool:
        return self.rho_k_new < 1.0


@dataclass(frozen=True)
class NortonTrace:
    throughput: np.ndarray
    elapsed: np.ndarray
    host_queue: np.ndarray


def subnetwork(profile: ServiceProfile, host_index: int) -> ServiceProfile:
    if profile.k < 2:
        raise DegenerateDecomposition()
    return remove_server(profile, host_index)


def subnetwork_bottleneck(profile: ServiceProfile, host_index: int) -> tuple[int, float]:
    """Slowest relaying server, numbered as in the full profile."""
    host_index = _check_index(host_index, profile.k)
    if profile.k < 2:
        raise DegenerateDecomposition()
    for index, s in ranked_servers(profile):
        if index != host_index:
            return index, s
    raise AssertionError("unreachable")


def fes_max_throughput(subprofile: ServiceProfile) -> float:
    return 1.0 / max(subprofile.service_times)


def fes_curve(subprofile: ServiceProfile, max_population: int) -> FesCurve:
    sol = solve_mva(subprofile, max_population)
    return FesCurve(
        rates=tuple(float(x) for x in sol.throughput),
        gamma_star=fes_max_throughput(subprofile),
    )


def balanced_host_utilization(
    gamma_e_star: float,
    fraction: float = DEFAULT_FRACTION,
    host_service: float = 1.0,
    host_index: Optional[int] = None,
) -> FlowBalanceReport:
    """Host utilization after throttling its input to ``fraction`` of the
    relaying subnetwork's maximum rate."""
    if not 0 < fraction <= 1:
        raise InvalidArgument(f"fraction must lie in (0, 1], got {fraction!r}")
    if not host_service > 0:
        raise InvalidArgument(f"host service time must be positive, got {host_service!r}")
    if not gamma_e_star > 0:
        raise InvalidArgument(f"gamma_e_star must be positive, got {gamma_e_star!r}")
    lam = fraction * gamma_e_star
    return FlowBalanceReport(
        host_service=host_service,
        subnet_bottleneck=1.0 / gamma_e_star,
        gamma_e_star=gamma_e_star,
        assumed_fraction=fraction,
        lambda_k=lam,
        rho_k_new=lam * host_service,
        mode="heuristic",
        host_index=host_index,
    )


def exact_host_utilization(
    curve: FesCurve, host_service: float, population: int, host_index: Optional[int] = None
) -> FlowBalanceReport:
    """Same report, with the host arrival rate taken from the Norton solve."""
    x, _ = norton_solve(curve, host_service, population)
    return FlowBalanceReport(
        host_service=host_service,
        subnet_bottleneck=1.0 / curve.gamma_star,
        gamma_e_star=curve.gamma_star,
        assumed_fraction=x / curve.gamma_star,
        lambda_k=x,
        rho_k_new=x * host_service,
        mode="exact",
        host_index=host_index,
    )


def norton_trace(curve: FesCurve, host_service: float, population: int) -> NortonTrace:
    """Load-dependent MVA on the two-station network {FES, host}.

    ``p[j]`` is the marginal probability of ``j`` requests at the FES for the
    previous population; ``p[0]`` is recovered by normalization.
    """
    if isinstance(population, bool) or int(population) != population or population < 1:
        raise InvalidArgument(f"population must be a positive integer, got {population!r}")
    if not host_service > 0:
        raise InvalidArgument(f"host service time must be positive, got {host_service!r}")
    big_n = int(population)
    if curve.max_population < big_n:
        raise CurveTooShort(big_n, curve.max_population)

    rates = np.asarray(curve.rates[:big_n], dtype=float)
    j = np.arange(1, big_n + 1, dtype=float)
    per_job = j / rates

    p = np.zeros(big_n + 1)
    p[0] = 1.0
    q_host = 0.0
    xs = np.empty(big_n)
    es = np.empty(big_n)
    qs = np.empty(big_n)
    for n in range(1, big_n + 1):
        w_fes = float(per_job[:n] @ p[:n])
        w_host = host_service * (1.0 + q_host)
        x = n / (w_fes + w_host)
        q_host = x * w_host

        new = np.zeros_like(p)
        new[1 : n + 1] = (x / rates[:n]) * p[:n]
        new[0] = max(0.0, 1.0 - math.fsum(new[1 : n + 1]))
        p = new

        xs[n - 1] = x
        es[n - 1] = w_fes + w_host
        qs[n - 1] = q_host
    return NortonTrace(xs, es, qs)


def norton_solve(curve: FesCurve, host_service: float, population: int) -> tuple[float, float]:
    trace = norton_trace(curve, host_service, population)
    return float(trace.throughput[-1]), float(trace.elapsed[-1])


def flow_balance_check(lambda_k: float, gamma_e: float, tolerance: float, eps: float = 1e-300) -> bool:
    if lambda_k < 0 or gamma_e < 0 or tolerance < 0:
        raise InvalidArgument("flow balance inputs must be nonnegative")
    return abs(lambda_k - gamma_e) <= tolerance * max(lambda_k, gamma_e, eps)
