"""Command-line driver: ``count``, ``oracle``, ``gen``, ``encode`` and ``bench``.

Exit codes: 0 success, 1 parse or usage error, 2 width cap (``count``) or
oracle atom cap (``oracle``) exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algorithms import ALGORITHMS
from .decomposition import HEURISTICS
from .errors import AtomCapExceeded, ProgramSyntaxError, SelfLoopError, WidthCapExceeded
from .generators import (PROBLEMS, TGridParams, encode_graph_problem, gen_2asp_tgrid,
                         gen_asp_tgrid, gen_sat_tgrid, to_dimacs)
from .parser import parse_edge_list, parse_program, render_program
from .program import count_answer_sets_bruteforce, oracle_cap
from .solver import DEFAULT_SEEDS, DEFAULT_WIDTH_CAP, RunConfig, count_answer_sets

FAMILIES = ("sat-tgrid", "asp-tgrid", "2asp-tgrid")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_count(args) -> int:
    seeds = tuple(args.seeds) if args.seeds else DEFAULT_SEEDS
    config = RunConfig(args.alg, args.heuristic, seeds, args.width_cap)
    program = parse_program(_read(args.program))
    try:
        result = count_answer_sets(program, config)
    except WidthCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.emit_graph:
        Path(args.emit_graph).write_text(result.graph.to_dot(program))
    if args.emit_td:
        Path(args.emit_td).write_text(result.td.to_pace(result.graph.n))
    stats = result.stats_dict()
    stats["unused_atoms"] = len(program.unused_atoms())
    if args.output == "json":
        print(json.dumps(stats))
    else:
        print(result.count)
        if args.stats:
            print(json.dumps(stats), file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    program = parse_program(_read(args.program))
    cap = args.cap if args.cap is not None else oracle_cap()
    try:
        print(count_answer_sets_bruteforce(program, cap))
    except AtomCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_gen(args) -> int:
    params = TGridParams(args.k, args.l, args.p, args.seed, args.q)
    info = {"family": args.family, "k": args.k, "l": args.l, "p": args.p, "seed": args.seed,
            "expected_clauses": round(params.expected_clauses(), 3)}
    if args.family == "sat-tgrid":
        clauses = gen_sat_tgrid(params)
        _write(to_dimacs(params, clauses), args.output)
        info.update(variables=args.k * args.l, clauses=len(clauses))
    else:
        prog = gen_asp_tgrid(params) if args.family == "asp-tgrid" else gen_2asp_tgrid(params)
        if args.family == "2asp-tgrid":
            info["q"] = args.q
        _write(render_program(prog), args.output)
        info.update(atoms=prog.num_atoms, rules=prog.num_rules)
    print(json.dumps(info), file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return 0


def cmd_encode(args) -> int:
    graph = parse_edge_list(_read(args.graph))
    prog = encode_graph_problem(args.problem, graph)
    _write(render_program(prog), args.output)
    return 0


def cmd_bench(args) -> int:
    from .report import run_benchmark, write_report

    rows = run_benchmark(args.ls, args.algs, args.k, args.p, args.instance_seed,
                         args.heuristic, tuple(args.seeds) if args.seeds else DEFAULT_SEEDS)
    csv_path, png_path = write_report(rows, args.out_dir)
    for r in rows:
        print(f"{r['algorithm']}\tl={r['l']}\twidth={r['width']}\t{r['seconds']:.3f}s")
    print(f"wrote {csv_path} and {png_path}")
    return 0


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _alg_list(text: str) -> list[str]:
    algs = [a for a in text.split(",") if a]
    for a in algs:
        if a not in ALGORITHMS:
            raise argparse.ArgumentTypeError(f"unknown algorithm {a!r}")
    return algs


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynacount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def decomposition_flags(p):
        p.add_argument("--heuristic", choices=HEURISTICS, default="min-fill")
        p.add_argument("--seed", type=int, action="append", dest="seeds",
                       help="decomposition seed (repeat up to 3 times; default 0 1 2)")

    p = sub.add_parser("count", help="count answer sets with dynamic programming")
    p.add_argument("program")
    p.add_argument("--alg", choices=sorted(ALGORITHMS), default="inc")
    decomposition_flags(p)
    p.add_argument("--width-cap", type=int, default=DEFAULT_WIDTH_CAP)
    p.add_argument("--stats", action="store_true", help="JSON run statistics on stderr")
    p.add_argument("--output", choices=("count", "json"), default="count")
    p.add_argument("--emit-td", metavar="PATH", help="write the decomposition (PACE .td)")
    p.add_argument("--emit-graph", metavar="PATH", help="write the graph (DOT)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="count answer sets by brute force")
    p.add_argument("program")
    p.add_argument("--cap", type=int, help="atom cap (default: $DYNACOUNT_ORACLE_CAP or 24)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a TGrid instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("-p", type=float, required=True)
    p.add_argument("-q", type=float, default=0.5, help="existential probability (2asp-tgrid)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("encode", help="encode a graph problem from an edge list")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("bench", help="ASP-TGrid scaling run; writes CSV and a figure")
    p.add_argument("--ls", type=_int_list, default=[40, 80, 120, 160, 200])
    p.add_argument("--algs", type=_alg_list, default=["inc", "prim", "invprim"])
    p.add_argument("-k", type=int, default=3)
    p.add_argument("-p", type=float, default=0.85)
    p.add_argument("--instance-seed", type=int, default=1)
    decomposition_flags(p)
    p.add_argument("--out-dir", default="bench-out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if len(getattr(args, "seeds", None) or ()) > 3:
            raise UsageError("at most three --seed values")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (ProgramSyntaxError, SelfLoopError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
