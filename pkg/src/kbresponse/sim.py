"""Discrete-event simulation of the closed cyclic network.

A fixed window of ``N`` requests circulates S_1 -> ... -> S_K, each server a
single FCFS queue; with a positive think time, requests leaving the host
pass through an infinite-server delay before re-entering S_1. All requests
start queued at S_1.

Replication ``r`` draws from ``SeedSequence(seed).spawn(R)[r]`` and each
station gets its own child stream, so results do not depend on the order
(or process) in which replications run.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np
from scipy import stats

from .errors import InvalidArgument, InvalidHorizon
from .model import ServiceProfile

Distribution = Literal["exponential", "deterministic"]
DISTRIBUTIONS = ("exponential", "deterministic")
_BLOCK = 4096


@dataclass(frozen=True)
class SimConfig:
    profile: ServiceProfile
    window_n: int
    think_time: float = 0.0
    distribution: Distribution = "exponential"
    horizon: float = 10_000.0
    warmup: Optional[float] = None  # defaults to 10% of the horizon
    replications: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.warmup is None:
            object.__setattr__(self, "warmup", 0.1 * self.horizon)
        if self.distribution not in DISTRIBUTIONS:
            raise InvalidArgument(f"unknown distribution {self.distribution!r}")
        if isinstance(self.window_n, bool) or int(self.window_n) != self.window_n or self.window_n < 0:
            raise InvalidArgument(f"window size must be a nonnegative integer, got {self.window_n!r}")
        if not self.think_time >= 0 or not math.isfinite(self.think_time):
            raise InvalidArgument(f"think time must be nonnegative, got {self.think_time!r}")
        if int(self.replications) != self.replications or self.replications < 1:
            raise InvalidArgument(f"replications must be >= 1, got {self.replications!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise InvalidArgument(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not (math.isfinite(self.horizon) and self.warmup >= 0 and self.horizon > self.warmup):
            raise InvalidHorizon(
                f"need horizon > warmup >= 0, got horizon={self.horizon!r} warmup={self.warmup!r}"
            )

    @property
    def window(self) -> float:
        return self.horizon - self.warmup


@dataclass(frozen=True)
class ReplicationStats:
    throughput: float
    elapsed: float
    utilizations: tuple[float, ...]
    completions: tuple[int, ...]  # whole run, per server
    cycles: int  # host completions inside the observation window


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    throughput_mean: float
    throughput_halfwidth: float
    elapsed_mean: float
    elapsed_halfwidth: float
    utilization_means: tuple[float, ...]
    utilization_halfwidths: tuple[float, ...]
    replications: tuple[ReplicationStats, ...] = field(repr=False)

    @property
    def replication_count(self) -> int:
        return len(self.replications)

    def throughput_interval(self) -> tuple[float, float]:
        return (
            self.throughput_mean - self.throughput_halfwidth,
            self.throughput_mean + self.throughput_halfwidth,
        )

    def elapsed_interval(self) -> tuple[float, float]:
        return (
            self.elapsed_mean - self.elapsed_halfwidth,
            self.elapsed_mean + self.elapsed_halfwidth,
        )


def mean_halfwidth(samples: Sequence[float], level: float = 0.95) -> tuple[float, float]:
    """Sample mean and Student-t confidence half-width (inf for one sample)."""
    a = np.asarray(samples, dtype=float)
    mean = float(a.mean())
    if a.size < 2:
        return mean, math.inf
    sd = float(a.std(ddof=1))
    return mean, float(stats.t.ppf(0.5 + level / 2, a.size - 1) * sd / math.sqrt(a.size))


class _Stream:
    __slots__ = ("rng", "mean", "deterministic", "buf", "pos")

    def __init__(self, seq: np.random.SeedSequence, mean: float, deterministic: bool):
        self.rng = np.random.Generator(np.random.PCG64(seq))
        self.mean = mean
        self.deterministic = deterministic
        self.buf = []
        self.pos = 0

    def draw(self) -> float:
        if self.deterministic:
            return self.mean
        if self.pos == len(self.buf):
            self.buf = (self.rng.standard_exponential(_BLOCK) * self.mean).tolist()
            self.pos = 0
        x = self.buf[self.pos]
        self.pos += 1
        return x


def run_replication(config: SimConfig, seq: np.random.SeedSequence) -> ReplicationStats:
    times = config.profile.service_times
    k = len(times)
    big_n = int(config.window_n)
    warm, horizon = float(config.warmup), float(config.horizon)
    det = config.distribution == "deterministic"
    children = seq.spawn(k + 1)
    streams = [_Stream(children[i], times[i], det) for i in range(k)]
    think = _Stream(children[k], config.think_time, det) if config.think_time > 0 else None

    queues = [deque() for _ in range(k)]
    busy = [0.0] * k
    done_all = [0] * k
    host_in_window = 0
    cycle_total = 0.0
    cycle_start = [0.0] * big_n
    events = []  # (time, seq, station, job); station k is the think stage
    counter = 0

    def start_service(i, now):
        nonlocal counter
        d = streams[i].draw()
        end = now + d
        overlap = min(end, horizon) - max(now, warm)
        if overlap > 0:
            busy[i] += overlap
        counter += 1
        heapq.heappush(events, (end, counter, i, queues[i][0]))

    for job in range(big_n):
        queues[0].append(job)
    if big_n:
        start_service(0, 0.0)

    while events:
        now, _, station, job = heapq.heappop(events)
        if now > horizon:
            break
        if station == k:
            cycle_start[job] = now
            queues[0].append(job)
            if len(queues[0]) == 1:
                start_service(0, now)
            continue

        queues[station].popleft()
        done_all[station] += 1
        if queues[station]:
            start_service(station, now)

        if station == k - 1:
            if now > warm:
                host_in_window += 1
                cycle_total += now - cycle_start[job]
            if think is not None:
                counter += 1
                heapq.heappush(events, (now + think.draw(), counter, k, job))
                continue
            cycle_start[job] = now
            nxt = 0
        else:
            nxt = station + 1
        queues[nxt].append(job)
        if len(queues[nxt]) == 1:
            start_service(nxt, now)

    window = horizon - warm
    return ReplicationStats(
        throughput=host_in_window / window,
        elapsed=cycle_total / host_in_window if host_in_window else math.nan,
        utilizations=tuple(b / window for b in busy),
        completions=tuple(done_all),
        cycles=host_in_window,
    )


def _run_indexed(args):
    config, seq = args
    return run_replication(config, seq)


def simulate(config: SimConfig, workers: int = 1) -> SimResult:
    seqs = np.random.SeedSequence(int(config.seed)).spawn(int(config.replications))
    jobs = [(config, s) for s in seqs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reps = list(pool.map(_run_indexed, jobs))
    else:
        reps = [_run_indexed(j) for j in jobs]
    return summarize_replications(config, reps)


def summarize_replications(config: SimConfig, reps: Sequence[ReplicationStats]) -> SimResult:
    x_mean, x_hw = mean_halfwidth([r.throughput for r in reps])
    e_mean, e_hw = mean_halfwidth([r.elapsed for r in reps])
    util = np.array([r.utilizations for r in reps])
    u_stats = [mean_halfwidth(util[:, i]) for i in range(util.shape[1])]
    return SimResult(
        config=config,
        throughput_mean=x_mean,
        throughput_halfwidth=x_hw,
        elapsed_mean=e_mean,
        elapsed_halfwidth=e_hw,
        utilization_means=tuple(m for m, _ in u_stats),
        utilization_halfwidths=tuple(h for _, h in u_stats),
        replications=tuple(reps),
    )
