"""Command line entry point: ``kbresponse analyze|decompose|simulate|sweep``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Optional, Sequence

from . import decomp, mva, oplaws
from .errors import DegenerateDecomposition, InvalidArgument, ParseError, ValidationError
from .model import ranked_servers, summarize
from .modelfile import ModelFile, load_model
from .report import FLAG, FRACTION, INT, PERCENT, RATE, TEXT, TIME, Report, Table, emit_csv, render_text
from .sim import SimConfig, simulate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_DEGENERATE = 5

# figures printed in the worked example that our arithmetic does not reproduce
PAPER_M_STAR = 270
PAPER_R_STAR = 0.0875
PAPER_HOST_RHO = 0.769
_WORKED_EXAMPLE = ("table1",)


def parse_range(text: str) -> tuple[int, int]:
    """``"A..B"`` or ``"A"`` to an inclusive integer pair."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or A, got {text!r}") from None
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 0 <= A <= B")
    return a, b


def _workload(model: ModelFile, think: Optional[float], transactions: Optional[int]) -> ModelFile:
    w = model.workload
    if think is not None:
        w = replace(w, think_time=think)
    if transactions is not None:
        w = replace(w, transactions=transactions)
    return replace(model, workload=w)


def analyze(model: ModelFile, n_range: Optional[tuple[int, int]] = None, exact: bool = False) -> Report:
    profile, w = model.profile, model.workload
    summary = summarize(profile)
    lo, hi = n_range if n_range is not None else (1, profile.k)
    crit = oplaws.critical_points(summary, w.think_time, w.transactions)
    host = model.host_index
    host_rho = oplaws.utilization(summary.gamma_max, profile[host])

    rep = Report(f"Responsiveness analysis: {model.label or 'model'} (K={profile.k})")
    rep.fact("total service ability sigma(s) [s]", summary.sigma, TIME)
    rep.fact("bottleneck s_max [s]", summary.s_max, TIME)
    rep.fact("bottleneck server", summary.bottleneck_index, INT)
    rep.fact("slowest servers", " > ".join(f"S{i}" for i, _ in ranked_servers(profile)[:5]), TEXT)
    rep.fact("throughput lower bound 1/sigma [req/s]", summary.gamma_min, RATE)
    rep.fact("throughput upper bound 1/s_max [req/s]", summary.gamma_max, RATE)
    rep.fact(f"host S{host} utilization at 1/s_max", host_rho, FRACTION)
    if host_rho >= 1.0:
        rep.fact("host state", "saturated", TEXT)
    rep.fact("think time T(u) [s]", w.think_time, TIME)
    rep.fact("transactions per session n", w.transactions, INT)
    rep.fact("critical request count N*", crit.n_star, INT)
    rep.fact("critical user count M*", crit.m_star, INT)
    r_star = oplaws.responsiveness_approx(summary, crit.n_star)
    rep.fact("responsiveness at N*", r_star.responsiveness, PERCENT)

    columns = [("N", INT), ("R_approx_pct", PERCENT), ("E_approx", TIME), ("X_approx", RATE)]
    if exact:
        columns += [("R_exact_pct", PERCENT), ("E_exact", TIME), ("X_exact", RATE)]
    table = Table("Responsiveness by window size N", columns)
    sol = mva.solve_mva(profile, max(hi, 1)) if exact else None
    for pt in oplaws.responsiveness_table(summary, lo, hi):
        n = pt.window_n
        x_approx = n / pt.elapsed if n else 0.0
        row = [n, pt.responsiveness, pt.elapsed, x_approx]
        if sol is not None:
            if n == 0:
                row += [1.0, 0.0, 0.0]
            else:
                e = mva.elapsed_exact(sol, n)
                row += [oplaws.responsiveness_exact(summary, e, n).responsiveness, e, mva.throughput_at(sol, n)]
        table.rows.append(tuple(row))
    rep.tables.append(table)

    if model.label in _WORKED_EXAMPLE:
        rep.notes.append(
            f"M* = {crit.m_star} from N* + ceil(T(u)*n/s_max); the published worked example "
            f"prints M* = {PAPER_M_STAR}, which no rounding of these inputs reproduces."
        )
        rep.notes.append(
            f"R at N* = {crit.n_star} evaluates to {100 * r_star.responsiveness:.2f}%; "
            f"the published figure is {100 * PAPER_R_STAR:.2f}%."
        )
        rep.notes.append(
            f"Host utilization at 1/s_max is {profile[host]:.3f} / {summary.s_max:.3f} = "
            f"{host_rho:.4f}; the published figure is {PAPER_HOST_RHO:.3f}."
        )
    return rep


def decompose(
    model: ModelFile,
    host_index: Optional[int] = None,
    fraction: float = decomp.DEFAULT_FRACTION,
    population: Optional[int] = None,
    tolerance: float = 0.01,
) -> Report:
    profile = model.profile
    host = host_index if host_index is not None else model.host_index
    sub = decomp.subnetwork(profile, host)
    s_host = profile[host]
    summary = summarize(profile)
    if population is None:
        population = oplaws.critical_request_count(summary, model.workload.transactions)
    if population < 1:
        raise InvalidArgument("decomposition needs a population of at least 1")

    sub_index, sub_s = decomp.subnetwork_bottleneck(profile, host)
    gamma_e_star = decomp.fes_max_throughput(sub)
    heuristic = decomp.balanced_host_utilization(gamma_e_star, fraction, s_host, host)
    curve = decomp.fes_curve(sub, population)
    norton = decomp.norton_trace(curve, s_host, population)
    full = mva.solve_mva(profile, population)
    exact = decomp.exact_host_utilization(curve, s_host, population, host)
    x_norton = float(norton.throughput[-1])
    x_full = mva.throughput_at(full, population)

    rep = Report(f"Host decomposition: {model.label or 'model'} (K={profile.k}, host S{host})")
    rep.fact("host service time s_K [s]", s_host, TIME)
    rep.fact("host utilization at 1/s_max before balancing", oplaws.utilization(summary.gamma_max, s_host), FRACTION)
    rep.fact("subnetwork bottleneck server", sub_index, INT)
    rep.fact("subnetwork bottleneck time [s]", sub_s, TIME)
    rep.fact("FES max throughput gamma_e* [req/s]", gamma_e_star, RATE)
    rep.fact("assumed fraction of gamma_e*", fraction, FRACTION)
    rep.fact("balanced host arrival rate lambda_K [req/s]", heuristic.lambda_k, RATE)
    rep.fact("balanced host utilization rho_K(new)", heuristic.rho_k_new, FRACTION)
    rep.fact("host steady-state after balancing", heuristic.steady_state, FLAG)
    rep.fact("population N", population, INT)
    rep.fact("Norton two-station throughput X(N) [req/s]", x_norton, RATE)
    rep.fact("full-network MVA throughput X(N) [req/s]", x_full, RATE)
    rep.fact("Norton relative difference", abs(x_norton - x_full) / x_full, TEXT)
    rep.fact("unthrottled host utilization X(N)*s_K", exact.rho_k_new, FRACTION)
    balanced = decomp.flow_balance_check(heuristic.lambda_k, x_norton, tolerance)
    rep.fact(f"lambda_K matches exact subnetwork flow (tol {tolerance:g})", balanced, FLAG)
    if not heuristic.steady_state:
        rep.notes.append(
            f"rho_K(new) = {heuristic.rho_k_new:.3f} >= 1: lambda_K exceeds the host capacity "
            f"1/s_K = {1 / s_host:.3f} req/s, so this fraction is infeasible (saturated host)."
        )
    elif not balanced and heuristic.lambda_k < x_norton:
        rep.notes.append(
            f"Unthrottled, the relaying servers deliver {x_norton:.3f} req/s to the host at N={population}; "
            f"host input must be throttled to {heuristic.lambda_k:.3f} req/s to reach rho_K(new)."
        )
    elif not balanced:
        rep.notes.append(
            f"At N={population} the relaying servers deliver only {x_norton:.3f} req/s, "
            f"below the assumed lambda_K = {heuristic.lambda_k:.3f} req/s."
        )

    table = Table(
        "Flow-equivalent server curve",
        [("j", INT), ("gamma_e", RATE), ("X_norton", RATE), ("X_full_mva", RATE)],
    )
    for j in range(1, population + 1):
        table.rows.append((j, curve.rate(j), float(norton.throughput[j - 1]), float(full.throughput[j - 1])))
    rep.tables.append(table)
    return rep


def simulate_report(model: ModelFile, config: SimConfig, workers: int = 1) -> Report:
    res = simulate(config, workers=workers)
    profile = config.profile
    rep = Report(
        f"Simulation: {model.label or 'model'} (K={profile.k}, N={config.window_n}, {config.distribution})"
    )
    rep.fact("seed", config.seed, INT)
    rep.fact("replications", res.replication_count, INT)
    rep.fact("horizon [s]", config.horizon, TIME)
    rep.fact("warmup [s]", config.warmup, TIME)
    rep.fact("think time [s]", config.think_time, TIME)
    rep.fact("throughput mean [req/s]", res.throughput_mean, RATE)
    rep.fact("throughput 95% half-width", res.throughput_halfwidth, RATE)
    rep.fact("elapsed mean [s]", res.elapsed_mean, TIME)
    rep.fact("elapsed 95% half-width", res.elapsed_halfwidth, TIME)

    sol = None
    if config.distribution == "exponential" and config.window_n >= 1:
        sol = mva.solve_mva(profile, config.window_n, config.think_time)
        x = mva.throughput_at(sol, config.window_n)
        lo, hi = res.throughput_interval()
        rep.fact("MVA throughput [req/s]", x, RATE)
        rep.fact("MVA elapsed [s]", mva.elapsed_exact(sol, config.window_n), TIME)
        rep.fact("MVA throughput inside 95% CI", lo <= x <= hi, FLAG)
    elif config.distribution != "exponential":
        rep.notes.append("MVA comparison omitted: the exact solver assumes exponential service.")

    columns = [("server", INT), ("service_time", TIME), ("utilization", FRACTION), ("halfwidth", FRACTION)]
    if sol is not None:
        columns.append(("mva_utilization", FRACTION))
    table = Table("Per-server utilization", columns)
    mva_util = sol.utilizations(config.window_n) if sol is not None else None
    for i, s in enumerate(profile.service_times):
        row = [i + 1, s, res.utilization_means[i], res.utilization_halfwidths[i]]
        if mva_util is not None:
            row.append(float(mva_util[i]))
        table.rows.append(tuple(row))
    rep.tables.append(table)
    return rep


def sweep(model: ModelFile, n_range: Optional[tuple[int, int]] = None) -> Report:
    profile = model.profile
    summary = summarize(profile)
    if n_range is None:
        n_range = (1, oplaws.critical_request_count(summary, 1))
    lo, hi = n_range
    lo = max(lo, 1)
    if hi < lo:
        raise InvalidArgument("sweep needs populations >= 1")
    sol = mva.solve_mva(profile, hi)
    rep = Report(f"Closed-form vs exact MVA sweep: {model.label or 'model'} (K={profile.k})")
    rep.fact("sigma(s) [s]", summary.sigma, TIME)
    rep.fact("s_max [s]", summary.s_max, TIME)
    table = Table(
        "Approximate vs exact responsiveness",
        [
            ("N", INT),
            ("R_approx_pct", PERCENT),
            ("R_exact_pct", PERCENT),
            ("E_approx", TIME),
            ("E_exact", TIME),
            ("X_exact", RATE),
            ("X_bound_ratio", FRACTION),
        ],
    )
    for n in range(lo, hi + 1):
        approx = oplaws.responsiveness_approx(summary, n)
        e = mva.elapsed_exact(sol, n)
        x = mva.throughput_at(sol, n)
        exact = oplaws.responsiveness_exact(summary, e, n)
        table.rows.append((n, approx.responsiveness, exact.responsiveness, approx.elapsed, e, x, x * summary.s_max))
    rep.tables.append(table)
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbresponse",
        description="Responsiveness, critical points and flow balance for closed cyclic queueing networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("model", help="bundled model name (table1, table1-swapped, two-server, single-server) or JSON file")
        p.add_argument("--csv", metavar="PATH", help="also write the main table as CSV ('-' for stdout)")
        p.add_argument("--think", type=float, metavar="T", help="override think time T(u) in seconds")
        p.add_argument("--transactions", type=int, metavar="n", help="override transactions per session")

    p = sub.add_parser("analyze", help="closed-form responsiveness table and critical points")
    common(p)
    p.add_argument("--n", type=parse_range, metavar="A..B", help="window sizes (default 1..K)")
    p.add_argument("--exact", action="store_true", help="add exact MVA columns")

    p = sub.add_parser("decompose", help="host / flow-equivalent server decomposition")
    common(p)
    p.add_argument("--host", type=int, metavar="I", help="host server index (default from model, else K)")
    p.add_argument("--fraction", type=float, default=decomp.DEFAULT_FRACTION, metavar="F",
                   help="assumed fraction of the subnetwork's maximum rate (default 0.75)")
    p.add_argument("--n", type=parse_range, metavar="A..B", help="population; the upper end is used (default N*)")
    p.add_argument("--tolerance", type=float, default=0.01, help="relative tolerance of the flow-balance check")

    p = sub.add_parser("simulate", help="discrete-event simulation with MVA comparison")
    common(p)
    p.add_argument("--n", type=parse_range, metavar="N", required=True, help="window size")
    p.add_argument("--dist", choices=["exp", "det"], default="exp")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--horizon", type=float, default=10_000.0)
    p.add_argument("--warmup", type=float, help="discarded prefix in seconds (default 10%% of horizon)")
    p.add_argument("--workers", type=int, default=1, help="processes for replications")

    p = sub.add_parser("sweep", help="closed-form vs exact MVA over a range of N")
    common(p)
    p.add_argument("--n", type=parse_range, metavar="A..B", help="window sizes (default 1..ceil(sigma/s_max))")
    return parser


def run(args: argparse.Namespace) -> Report:
    model = _workload(load_model(args.model), args.think, args.transactions)
    if args.command == "analyze":
        return analyze(model, args.n, exact=args.exact)
    if args.command == "decompose":
        population = args.n[1] if args.n else None
        return decompose(model, args.host, args.fraction, population, args.tolerance)
    if args.command == "simulate":
        lo, hi = args.n
        if lo != hi:
            raise InvalidArgument("simulate takes a single window size, not a range")
        config = SimConfig(
            profile=model.profile,
            window_n=hi,
            # the simulated loop is the inner window; think time applies only when asked for
            think_time=args.think if args.think is not None else 0.0,
            distribution="exponential" if args.dist == "exp" else "deterministic",
            horizon=args.horizon,
            warmup=args.warmup,
            replications=args.reps,
            seed=args.seed,
        )
        return simulate_report(model, config, workers=args.workers)
    return sweep(model, args.n)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except ParseError as exc:
        print(f"kbresponse: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateDecomposition as exc:
        print(f"kbresponse: degenerate model: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValidationError as exc:
        print(f"kbresponse: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    sys.stdout.write(render_text(report))
    if args.csv:
        text = emit_csv(report)
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            with open(args.csv, "w", newline="") as fh:
                fh.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
