"""Command-line interface.

Subcommands::

    lqnet table1                      equilibrium and efficient benchmarks
    lqnet solve --network star        efforts and payoffs on one network
    lqnet enumerate                   all equilibria up to isomorphism
    lqnet welfare                     welfare-maximizing network
    lqnet simulate --config run.toml  agent-based sessions -> history.csv
    lqnet analyze --in DIR            group summaries and tests
    lqnet compare --a DIR --b DIR     treatment comparison

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (GroupSummary, METRICS, compare_treatments, effort_vs_equilibrium,
                       payoff_vs_benchmark, summarize)
from .config import dump_config, load_config
from .equilibrium import classify_network, enumerate_equilibria, equilibrium_effort, is_nash
from .exceptions import ConcavityViolated, ConfigError, NonConvergence, SpectralConditionViolated
from .export import read_history_csv, write_history_csv
from .game import GameParams, payoffs
from .graphs import complete_network, empty_network, parse_network, star_network
from .sim import run_batch
from .welfare import default_initiation, efficient_effort, numerical_gradient, optimize_welfare, welfare

logger = logging.getLogger("lqnet")

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXPECTED_EQUILIBRIUM_CLASSES = {"Empty", "Star", "Complete"}


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.6g}"
    return str(v)


def _vec(x) -> str:
    return "[" + ", ".join(fmt(float(v)) for v in x) + "]"


def _params(args) -> GameParams:
    kw = {}
    for name in ("n_players", "alpha", "beta", "comp", "link_cost", "link_benefit", "effort_max"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    if getattr(args, "literal_cost", False):
        kw.setdefault("beta", 4.0)
    try:
        return GameParams(**kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _add_game_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("game parameters")
    g.add_argument("--n-players", dest="n_players", type=int)
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--comp", type=float)
    g.add_argument("--link-cost", dest="link_cost", type=float)
    g.add_argument("--link-benefit", dest="link_benefit", type=float)
    g.add_argument("--effort-max", dest="effort_max", type=float)
    g.add_argument("--literal-cost", action="store_true",
                   help="use 4*x^2 as the effort cost instead of 2*x^2")


def table1_rows(params: GameParams) -> list[dict]:
    """Equilibrium and efficient efforts/payoffs on the empty, star and complete networks.

    Star values are (center, periphery) with peripheral players initiating;
    in the complete network every player initiates two links.
    """
    n = params.n_players
    nets = {"empty": empty_network(n), "star": star_network(n), "complete": complete_network(n)}
    rows = []
    for bench, solver in (("nash", equilibrium_effort), ("efficient", efficient_effort)):
        for name, adj in nets.items():
            x = solver(adj, params)
            pay = payoffs(x, default_initiation(adj), params).payoff
            rows.append({"benchmark": bench, "network": name,
                         "effort_center": x[0], "effort_periphery": x[-1],
                         "payoff_center": pay[0], "payoff_periphery": pay[-1]})
    return rows


def _write_csv(path: Path, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: fmt(v) for k, v in r.items()})


def cmd_table1(args) -> int:
    params = _params(args)
    t0 = time.perf_counter()
    rows = table1_rows(params)
    print(f"{'benchmark':<10} {'network':<9} {'effort':<22} {'payoff':<22}")
    for r in rows:
        if r["network"] == "star":
            eff = f"({r['effort_center']:.2f}, {r['effort_periphery']:.2f})"
            pay = f"({r['payoff_center']:.2f}, {r['payoff_periphery']:.2f})"
        else:
            eff, pay = f"{r['effort_center']:.2f}", f"{r['payoff_center']:.2f}"
        print(f"{r['benchmark']:<10} {r['network']:<9} {eff:<22} {pay:<22}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(out / "table1.csv", rows)
    logger.info("table1 computed in %.3f s", time.perf_counter() - t0)
    return 0


def cmd_solve(args) -> int:
    params = _params(args)
    try:
        adj = parse_network(args.network, params.n_players)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    g = default_initiation(adj)
    x = equilibrium_effort(adj, params)
    out = payoffs(x, g, params)
    check = is_nash(g, x, params)
    print(f"network class: {classify_network(adj)}")
    print(f"nash efforts:  {_vec(x)}")
    print(f"nash payoffs:  {_vec(out.payoff)}")
    print(f"is nash:       {fmt(check.is_equilibrium)} (max deviation gain {fmt(check.max_deviation_gain)})")
    try:
        xe = efficient_effort(adj, params)
        w = welfare(adj, xe, params, g)
        print(f"efficient efforts: {_vec(xe)}")
        print(f"efficient payoffs: {_vec(w.per_player_payoffs)}  total {fmt(w.total_welfare)}")
    except ConcavityViolated as exc:
        print(f"efficient allocation unavailable: {exc}")
    return 0


def cmd_enumerate(args) -> int:
    params = _params(args)
    t0 = time.perf_counter()
    certs = enumerate_equilibria(params, epsilon=args.epsilon)
    elapsed = time.perf_counter() - t0
    for c in certs:
        print(f"{str(c.network_class):<18} initiations={c.initiators} efforts={_vec(c.efforts)} "
              f"gain={fmt(c.max_deviation_gain)} labelled={c.n_labelled}")
    classes = sorted({str(c.network_class) for c in certs})
    print(f"equilibrium network classes: {', '.join(classes)} ({len(certs)} profile classes, {elapsed:.1f} s)")
    extra = set(classes) - EXPECTED_EQUILIBRIUM_CLASSES
    missing = EXPECTED_EQUILIBRIUM_CLASSES - set(classes)
    if extra or missing:
        print(f"DISCREPANCY: extra={sorted(extra)} missing={sorted(missing)}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        doc = [{"network_class": str(c.network_class), "intentions": c.intentions.astype(int).tolist(),
                "efforts": [float(fmt(v)) for v in c.efforts],
                "max_deviation_gain": float(fmt(c.max_deviation_gain)), "labelled_profiles": c.n_labelled}
               for c in certs]
        (out / "equilibria.json").write_text(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_welfare(args) -> int:
    params = _params(args)
    res = optimize_welfare(params)
    grad = numerical_gradient(res.network, res.efforts, params)
    print(f"optimal network:    {classify_network(res.network)} ({int(res.network.sum()) // 2} links)")
    print(f"efficient efforts:  {_vec(res.efforts)}")
    print(f"per-player payoffs: {_vec(res.per_player_payoffs)}")
    print(f"total welfare:      {fmt(res.total_welfare)}")
    print(f"max |gradient|:     {fmt(float(np.abs(grad).max()))}")
    return 0


def cmd_simulate(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = replace(config, master_seed=args.seed)
    t0 = time.perf_counter()
    histories = run_batch(config, args.reps, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.toml").write_text(dump_config(config))
    write_history_csv(histories, out / "history.csv")
    print(f"{config.treatment.name}: {args.reps} replication(s) x {config.groups} group(s) x "
          f"{config.rounds} round(s) -> {out / 'history.csv'} ({time.perf_counter() - t0:.1f} s)")
    return 0


def _load_run(directory) -> list:
    d = Path(directory)
    if not (d / "history.csv").exists():
        raise ConfigError(f"{d} has no history.csv")
    if not (d / "config.toml").exists():
        raise ConfigError(f"{d} has no config.toml")
    return read_history_csv(d / "history.csv", load_config(d / "config.toml"))


def _json_ready(d: dict) -> dict:
    return {k: (float(fmt(v)) if isinstance(v, (float, np.floating)) else v) for k, v in d.items()}


def cmd_analyze(args) -> int:
    batch = _load_run(args.input)
    out = Path(args.out or args.input)
    out.mkdir(parents=True, exist_ok=True)
    summaries: list[GroupSummary] = [s for h in batch for s in summarize(h, args.window)]
    _write_csv(out / "summary.csv", [s.to_dict() for s in summaries])

    params = batch[0].config.game
    cpl = complete_network(params.n_players)
    benchmark = float(payoffs(equilibrium_effort(cpl, params), default_initiation(cpl), params).payoff.mean())
    tests = {
        "effort_vs_equilibrium": _json_ready(effort_vs_equilibrium(batch, args.window).to_dict()),
        "payoff_vs_complete_nash": {**_json_ready(payoff_vs_benchmark(batch, benchmark, args.window).to_dict()),
                                    "benchmark": float(fmt(benchmark))},
    }
    (out / "tests.json").write_text(json.dumps(tests, indent=2) + "\n")
    for key in ("effort", "equilibrium_effort", "payoff", "adjusted_payoff", "links", "avg_degree",
                "reciprocation"):
        vals = np.array([getattr(s, key) for s in summaries], dtype=float)
        print(f"{key:<20} mean {fmt(np.nanmean(vals))}  sd {fmt(np.nanstd(vals, ddof=1) if vals.size > 1 else 0.0)}")
    print(f"wrote {out / 'summary.csv'} and {out / 'tests.json'}")
    return 0


def cmd_compare(args) -> int:
    a = _load_run(args.a)
    b = _load_run(args.b)
    metrics = METRICS if args.metric == "all" else [args.metric]
    results = []
    for m in metrics:
        c = compare_treatments(a, b, m, args.window)
        results.append(_json_ready(c.to_dict()))
        print(f"{m:<20} a={fmt(c.mean_a)} b={fmt(c.mean_b)} direction={c.direction:+d} "
              f"U={fmt(c.test.statistic)} z={fmt(c.test.z)} p={fmt(c.test.p_value)} "
              f"({c.test.method})")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "tests.json").write_text(json.dumps(results, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lqnet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="equilibrium and efficient benchmarks")
    _add_game_args(p)
    p.add_argument("--out", help="directory for table1.csv")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("solve", help="efforts and payoffs on one network")
    _add_game_args(p)
    p.add_argument("--network", required=True, help="empty|star|complete|path or edge list 0-1,0-2,...")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="equilibria up to isomorphism")
    _add_game_args(p)
    p.add_argument("--epsilon", type=float, default=1e-9)
    p.add_argument("--out", help="directory for equilibria.json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("welfare", help="welfare-maximizing network and efforts")
    _add_game_args(p)
    p.set_defaults(func=cmd_welfare)

    p = sub.add_parser("simulate", help="run seeded agent-based sessions")
    p.add_argument("--config", required=True)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, help="override [run] master_seed")
    p.add_argument("--out", default="out")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="group summaries of a simulated run")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--window", default="last10", help="last10|all|lastK")
    p.add_argument("--out", help="output directory (default: the input directory)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="Mann-Whitney comparison of two runs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--metric", default="effort", choices=list(METRICS) + ["all"])
    p.add_argument("--window", default="last10")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SpectralConditionViolated, ConcavityViolated, NonConvergence) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
