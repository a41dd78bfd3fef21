"""Command line interface.

Subcommands:

- ``gen``    write a random instance as JSON
- ``plan``   plan an instance with a chosen algorithm
- ``eval``   validate a plan against an instance and price it
- ``bench``  run a sweep and write a results CSV
- ``stats``  Monte Carlo cycle-structure statistics as CSV
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import (
    ALGORITHMS,
    board_dims,
    report_savings,
    run_stats,
    run_sweep,
    sweep_cases,
    write_results_csv,
    write_savings_csv,
    write_stats_csv,
)
from .errors import LatticeSwapError
from .lattice import random_arrangement
from .mcts import MctsConfig, plan_mcts
from .multi_buffer import PipelineConfig, plan_multi_buffer_dp
from .oracle import OracleLimits, plan_optimal
from .plan import CostParams, Instance, Plan, evaluate_cost, simulate
from .search import SearchLimits
from .single_buffer import (
    plan_cycle_following,
    plan_cycle_switching,
    plan_single_buffer_2d,
    plan_single_buffer_exact,
)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_gen(args: argparse.Namespace) -> int:
    dims = board_dims(args.dim, args.m)
    arr = random_arrangement(
        dims[0] * (dims[1] if len(dims) > 1 else 1), args.seed, dims
    )
    instance = Instance(arr, k=args.k, seed=args.seed)
    _write_or_print(instance.to_json(), args.out)
    return 0


def _plan_with(algo: str, instance: Instance, args: argparse.Namespace) -> Plan:
    arr = instance.arrangement
    k = instance.k
    params = CostParams(args.cp, args.ct)
    if algo == "follow":
        return plan_cycle_following(arr)
    if algo == "switch":
        return plan_cycle_switching(arr)
    if algo == "2d-greedy":
        return plan_single_buffer_2d(arr)
    if algo == "exact":
        return plan_single_buffer_exact(arr, SearchLimits(timeout_s=args.timeout))
    if algo == "dp":
        return plan_multi_buffer_dp(arr, k, PipelineConfig(search_timeout_s=args.timeout))
    if algo == "mcts":
        config = MctsConfig(
            budget=args.budget,
            range_prune=not getattr(args, "no_range_prune", False),
            seed=args.seed,
        )
        return plan_mcts(arr, k, params, config)
    if algo == "opt":
        return plan_optimal(arr, k, OracleLimits(timeout_s=args.timeout))
    raise ValueError(f"unknown algorithm {algo!r}")


def _load_instance(path: str) -> Instance:
    with open(path) as fh:
        return Instance.from_json(fh.read())


def cmd_plan(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    plan = _plan_with(args.algo, instance, args)
    report = evaluate_cost(plan, instance.arrangement.lattice, CostParams(args.cp, args.ct))
    if args.out:
        _write_or_print(plan.to_json(indent=2), args.out)
        print(report.to_json())
    else:
        print(plan.to_json(indent=2))
        print(report.to_json(), file=sys.stderr)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    with open(args.plan) as fh:
        plan = Plan.from_json(fh.read())
    result = simulate(plan, instance.arrangement, instance.k)
    report = evaluate_cost(plan, instance.arrangement.lattice, CostParams(args.cp, args.ct))
    payload = {"valid": result.valid, **report.to_dict()}
    if not result.valid:
        payload["reason"] = result.reason
        payload["failed_index"] = result.failed_index
    print(json.dumps(payload))
    return 0 if result.valid else 1


BENCH_DEFAULTS = {
    "dim": [1],
    "m": None,
    "k": [1],
    "algo": None,
    "trials": 5,
    "seed": 0,
    "cp": 1.0,
    "ct": 1.0,
    "timeout": 60.0,
    "budget": 2048,
    "workers": None,
    "out": None,
    "baseline_algo": None,
    "baseline_k": 1,
    "savings_out": None,
}


def _merge_bench_args(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset bench options from the config file, then defaults.

    Command-line values always win; the JSON config supplies whatever
    the command line leaves out.
    """
    config = {}
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
        unknown = set(config) - set(BENCH_DEFAULTS)
        if unknown:
            raise SystemExit(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, fallback in BENCH_DEFAULTS.items():
        if getattr(args, key) is None:
            value = config.get(key, fallback)
            if key in ("dim", "m", "k") and isinstance(value, (int, str)):
                value = _int_list(str(value))
            setattr(args, key, value)
    if isinstance(args.algo, list):
        args.algo = ",".join(args.algo)
    if args.m is None or args.algo is None or args.out is None:
        raise SystemExit("bench needs --m, --algo, and --out (flags or config file)")
    if args.savings_out and not args.baseline_algo:
        raise SystemExit("--savings-out needs --baseline-algo")
    return args


def cmd_bench(args: argparse.Namespace) -> int:
    args = _merge_bench_args(args)
    cases = sweep_cases(
        dims=args.dim,
        ms=args.m,
        ks=args.k,
        algos=args.algo.split(","),
        trials=args.trials,
        cp=args.cp,
        ct=args.ct,
        timeout_s=args.timeout,
        budget=args.budget,
    )
    rows = run_sweep(cases, args.seed, workers=args.workers)
    write_results_csv(rows, args.out)
    done = sum(1 for r in rows if not r["timeout"])
    print(f"{len(rows)} runs ({done} finished) -> {args.out}")
    if args.savings_out:
        table = report_savings(rows, args.baseline_algo, args.baseline_k)
        write_savings_csv(table, args.savings_out)
        print(f"{len(table)} aggregate rows -> {args.savings_out}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    records = run_stats(args.m, args.samples, args.seed)
    write_stats_csv(records, args.out)
    print(f"{len(records)} rows -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeswap",
        description="Pick-n-swap rearrangement planning on 1D and 2D lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--m", type=int, required=True, help="number of cells (2D rounds up to a square)")
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--k", type=int, default=1, help="buffer count stored with the instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("plan", help="plan an instance")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--cp", type=float, default=1.0, help="cost per operation")
    p.add_argument("--ct", type=float, default=1.0, help="cost per unit distance")
    p.add_argument("--budget", type=int, default=2048, help="rollouts per action (mcts)")
    p.add_argument("--seed", type=int, default=0, help="rollout seed (mcts)")
    p.add_argument(
        "--no-range-prune",
        action="store_true",
        help="disable the 1D action pruning inside mcts",
    )
    p.add_argument("--timeout", type=float, default=600.0, help="search budget in seconds")
    p.add_argument("-o", "--out", default=None, help="plan JSON path (default: stdout)")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("eval", help="validate and price a plan")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("-p", "--plan", required=True)
    p.add_argument("--cp", type=float, default=1.0)
    p.add_argument("--ct", type=float, default=1.0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    p.add_argument("--config", default=None, help="JSON file of bench options")
    p.add_argument("--dim", type=_int_list, default=None, help="comma list of 1,2")
    p.add_argument("--m", type=_int_list, default=None, help="comma list of sizes")
    p.add_argument("--k", type=_int_list, default=None, help="comma list of buffer counts")
    p.add_argument("--algo", default=None, help="comma list of algorithms")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cp", type=float, default=None)
    p.add_argument("--ct", type=float, default=None)
    p.add_argument("--timeout", type=float, default=None, help="per-run budget in seconds")
    p.add_argument("--budget", type=int, default=None, help="rollouts per action (mcts)")
    p.add_argument("--workers", type=int, default=None, help="processes (default: LATTICESWAP_WORKERS or 1)")
    p.add_argument("--baseline-algo", default=None, help="reference algorithm for the savings table")
    p.add_argument("--baseline-k", type=int, default=None, help="reference buffer count (default 1)")
    p.add_argument("--savings-out", default=None, help="aggregated travel-ratio CSV path")
    p.add_argument("-o", "--out", default=None, help="results CSV path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="cycle-structure statistics")
    p.add_argument("--m", type=_int_list, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True, help="stats CSV path")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LatticeSwapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
