"""Command-line interface: solving, generation, verification, counting,
trace inspection and benchmarking.

Exit codes: 0 success, 1 input or parameter error, 2 check/verification
failure or internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from .counting import bound_report, count_partial_increasing
from .crosscheck import cross_check
from .game import GeneratorParams, Player, generate_random, validate
from .oracles import enumerate_solve, zielonka_solve
from .pgsolver import PgSolverError, parse_pgsolver, serialize_pgsolver
from .solver import BudgetExceededError, solve
from .stats import TraceInvariantError, extract_even_factorization, run_trace, trace_violations


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _winner_name(player: Player) -> str:
    return "even" if player is Player.ANKE else "odd"


def cmd_solve(args) -> int:
    try:
        game = parse_pgsolver(_read_input(args.input))
    except (OSError, PgSolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    problems = validate(game)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return 1
    stats = {
        "k": None,
        "product_nodes": None,
        "product_edges": None,
        "bound_nodes": None,
        "bound_edges": None,
    }
    try:
        if args.algorithm == "qp":
            result = solve(game, k=args.k, budget=args.budget)
            winners = result.winners
            stats = result.stats
        elif args.algorithm == "zielonka":
            winners = zielonka_solve(game).winners
        else:
            winners = enumerate_solve(game)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.check:
        oracle = zielonka_solve(game).winners
        if oracle != winners:
            print("error: winner mismatch against the Zielonka oracle", file=sys.stderr)
            return 2
    if args.format == "json":
        for v, w in enumerate(winners):
            print(json.dumps({"vertex": v, "winner": _winner_name(w)}))
        print(json.dumps(stats))
    else:
        for v, w in enumerate(winners):
            print(f"vertex {v}: {_winner_name(w)}")
        if stats["k"] is not None:
            print(
                f"k={stats['k']} product_nodes={stats['product_nodes']} "
                f"product_edges={stats['product_edges']} "
                f"bound_nodes={stats['bound_nodes']} bound_edges={stats['bound_edges']}"
            )
    return 0


def cmd_gen(args) -> int:
    try:
        params = GeneratorParams(
            n=args.n,
            max_priority=args.max_priority,
            out_degree_min=args.deg_min,
            out_degree_max=args.deg_max,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = serialize_pgsolver(generate_random(params))
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def cmd_verify(args) -> int:
    report = cross_check(
        count=args.games,
        n_range=(args.n_min, args.n_max),
        m_range=(args.m_min, args.m_max),
        degree_range=(args.deg_min, args.deg_max),
        seed=args.seed,
        run_enumerate=not args.no_enumerate,
        check_odd_strategies=args.check_odd_strategies,
        keep_records=args.records,
    )
    sys.stdout.write(report.to_json(include_timings=not args.no_timings) + "\n")
    failed = (
        not report.all_agree
        or report.bounds_violations
        or report.odd_strategy_failures
    )
    return 2 if failed else 0


def cmd_count(args) -> int:
    k, m = args.k, args.max_priority
    report = bound_report(k, m)
    for i in range(k):
        print(f"|S_{{{i},{m}}}| = {count_partial_increasing(i, m)}")
    print(f"naive bound (M+1)^k = {(m + 1) ** k}")
    for i, g in enumerate(report.g):
        print(f"g({i}) = {g}")
    print(f"total |S_{{{k - 1},{m}}}| = {report.total}")
    print(f"i_star = {report.i_star} (closed-form lower bound {report.i_star_lower_bound:.4f})")
    print(f"exponent constant log2((sqrt2+1)/(sqrt2-1)) = {report.exponent_constant:.6f}")
    return 0


def cmd_trace(args) -> int:
    try:
        priorities = [int(x) for x in args.priorities.split(",") if x.strip()]
        if not priorities or any(c < 1 for c in priorities):
            raise ValueError("priorities must be integers >= 1")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        trace = run_trace(priorities, args.k, check=True)
    except TraceInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 2
    for line in trace.dump_lines():
        print(line)
    fact = extract_even_factorization(trace)
    print(f"factorization: {list(fact.dates)}")
    violations = trace_violations(trace)
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return 2
    print("all trace properties hold")
    return 0


def cmd_bench(args) -> int:
    try:
        n_values = [int(x) for x in args.n_list.split(",")]
        m_values = [int(x) for x in args.m_list.split(",")]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rows = bench_mod.run_bench(n_values, m_values, seed=args.seed)
    csv_text = bench_mod.rows_to_csv(rows)
    if args.out == "-":
        sys.stdout.write(csv_text)
    else:
        Path(args.out).write_text(csv_text)
        figure = args.figure or str(Path(args.out).with_suffix(".png"))
        bench_mod.save_figure(rows, figure)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a PGSolver-format game")
    p.add_argument("input", help="path to a PGSolver file, or - for stdin")
    p.add_argument("--format", choices=["text", "json"], default="json")
    p.add_argument("--algorithm", choices=["qp", "zielonka", "brute"], default="qp")
    p.add_argument("--k", type=int, default=None, help="override the statistic index bound")
    p.add_argument("--budget", type=int, default=None, help="product-node cap")
    p.add_argument("--check", action="store_true", help="cross-check against Zielonka")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a random game")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-priority", type=int, required=True)
    p.add_argument("--deg-min", type=int, default=1)
    p.add_argument("--deg-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="batch cross-check against the oracles")
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--deg-min", type=int, default=1)
    p.add_argument("--deg-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-enumerate", action="store_true")
    p.add_argument("--check-odd-strategies", action="store_true")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("--records", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="exact sizes of the statistics space")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-priority", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("trace", help="dump a statistic trace")
    p.add_argument("--priorities", required=True, help="comma-separated priorities")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("bench", help="time the solver across an n/M grid")
    p.add_argument("--n-list", default="10,20,40")
    p.add_argument("--m-list", default="2,4,6")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.add_argument("--figure", default=None, help="figure path (default: CSV path with .png)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code = args.func(args)
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
