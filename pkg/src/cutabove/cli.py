"""Command-line front end.

Each command prints one JSON object to stdout (except gen without --out,
which prints the generated graph file itself so it can be piped into the
other commands). Errors go to stderr. Exit codes: 0 yes/success, 1 no,
2 usage or format error, 3 broken internal invariant.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from .dimacs import format_graph, parse_graph
from .errors import GraphFormatError, InvariantViolation
from .generate import gen_clique_forest, gen_connected
from .graph import Graph
from .kernel import DecidedNo, DecidedYes, Kernel, format_kernel, kernelize
from .oracle import oracle_max_cut
from .reduction import reduce_exhaustively, trace_log_lines
from .solver import convert_maxcut_param, solve_aee


@dataclass(frozen=True)
class RunReport:
    """One solve run: the answer plus the instance fingerprint and stats."""

    command: str
    n: int
    m: int
    k: int
    answer: str
    best_cut: int | None
    threshold_quarters: int
    s_size: int
    branches: int
    wall_time_ms: int
    witness: str | None


def _read_graph(path: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_graph(text)


def _color_string(g: Graph, assignment) -> str | None:
    if assignment is None:
        return None
    return "".join(str(assignment[v]) for v in g.sorted_vertices)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def _cmd_solve(args) -> int:
    g = _read_graph(args.file)
    k = 4 * args.k if args.whole else args.k
    start = time.perf_counter()
    outcome = solve_aee(g, k)
    elapsed = int(round(1000 * (time.perf_counter() - start)))
    report = RunReport(
        command="solve",
        n=g.n,
        m=g.m,
        k=k,
        answer=outcome.answer,
        best_cut=outcome.best_cut,
        threshold_quarters=outcome.threshold.quarters,
        s_size=outcome.s_size,
        branches=outcome.branches_evaluated,
        wall_time_ms=elapsed,
        witness=_color_string(g, outcome.witness),
    )
    _emit(asdict(report))
    return 0 if outcome.answer == "yes" else 1


def _cmd_kernelize(args) -> int:
    g = _read_graph(args.file)
    outcome = kernelize(g, args.k)
    report = {
        "command": "kernelize",
        "n": g.n,
        "m": g.m,
        "k": args.k,
    }
    if isinstance(outcome, Kernel):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_kernel(outcome))
        report["answer"] = "kernel"
        report["out"] = args.out
        report["kernel_n"] = outcome.graph.n
        report["kernel_m"] = outcome.graph.m
        report["kernel_k"] = outcome.k
        report["s_size"] = len(outcome.separator)
        _emit(report)
        return 0
    report["answer"] = "yes" if isinstance(outcome, DecidedYes) else "no"
    report["reason"] = outcome.reason.value
    _emit(report)
    return 0 if isinstance(outcome, DecidedYes) else 1


def _cmd_reduce(args) -> int:
    g = _read_graph(args.file)
    trace = reduce_exhaustively(g, args.k)
    report = {
        "command": "reduce",
        "n": g.n,
        "m": g.m,
        "k": args.k,
        "answer": "yes" if trace.final_k <= 0 else "separator",
        "final_n": trace.final_graph.n,
        "final_k": trace.final_k,
        "separator": sorted(trace.marked),
        "trace": list(trace_log_lines(trace)),
    }
    _emit(report)
    return 0


def _cmd_oracle(args) -> int:
    g = _read_graph(args.file)
    value, witness = oracle_max_cut(g)
    _emit(
        {
            "command": "oracle",
            "n": g.n,
            "m": g.m,
            "value": value,
            "witness": _color_string(g, witness),
        }
    )
    return 0


def _cmd_convert(args) -> int:
    g = _read_graph(args.file)
    conv = convert_maxcut_param(g, args.cut)
    _emit(
        {
            "command": "convert",
            "n": g.n,
            "m": g.m,
            "k_cut": args.cut,
            "k_quarters": conv.k_quarters,
            "always_yes": conv.always_yes,
        }
    )
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "connected":
        g = gen_connected(args.n, args.p, args.seed)
    else:
        g = gen_clique_forest(args.blocks, args.max_block, args.seed)
    text = format_graph(g)
    if args.out is None:
        sys.stdout.write(text)
        return 0
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    _emit({"command": "gen", "kind": args.kind, "n": g.n, "m": g.m, "out": args.out})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutabove",
        description="Exact Max-Cut above the Edwards-Erdos bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide one instance")
    solve.add_argument("file", nargs="?", default="-", help="graph file or - for stdin")
    solve.add_argument("--k", type=int, required=True)
    units = solve.add_mutually_exclusive_group()
    units.add_argument(
        "--quarters",
        action="store_true",
        help="k counts quarter edges above the bound (default)",
    )
    units.add_argument(
        "--whole",
        action="store_true",
        help="k counts whole edges above the bound (multiplies by 4)",
    )
    solve.set_defaults(func=_cmd_solve)

    kern = sub.add_parser("kernelize", help="shrink an instance or decide it")
    kern.add_argument("file", nargs="?", default="-")
    kern.add_argument("--k", type=int, required=True)
    kern.add_argument("--out", required=True, help="where to write the kernel")
    kern.set_defaults(func=_cmd_kernelize)

    red = sub.add_parser("reduce", help="run the one-way reduction and print its trace")
    red.add_argument("file", nargs="?", default="-")
    red.add_argument("--k", type=int, required=True)
    red.set_defaults(func=_cmd_reduce)

    orc = sub.add_parser("oracle", help="brute-force maximum cut (small graphs)")
    orc.add_argument("file", nargs="?", default="-")
    orc.set_defaults(func=_cmd_oracle)

    conv = sub.add_parser("convert", help="turn a plain cut target into the above-bound parameter")
    conv.add_argument("file", nargs="?", default="-")
    conv.add_argument("--cut", type=int, required=True)
    conv.set_defaults(func=_cmd_convert)

    gen = sub.add_parser("gen", help="generate a test graph")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    conn = gen_sub.add_parser("connected", help="random connected graph")
    conn.add_argument("--n", type=int, required=True)
    conn.add_argument("--p", type=float, required=True)
    conn.add_argument("--seed", type=int, required=True)
    conn.add_argument("--out")
    conn.set_defaults(func=_cmd_gen)
    forest = gen_sub.add_parser("cliqueforest", help="random clique forest")
    forest.add_argument("--blocks", type=int, required=True)
    forest.add_argument("--max-block", type=int, required=True)
    forest.add_argument("--seed", type=int, required=True)
    forest.add_argument("--out")
    forest.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except (GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
