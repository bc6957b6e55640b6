"""Command-line entry point.

Exit codes: 0 ok, 1 usage, 2 I/O, 3 truncated by --limit/--time-budget,
4 verification found a difference.
"""
from __future__ import annotations

import argparse
import json
import random
import resource
import sys
import time

from . import bench
from .enumerator import EnumConfig, enumerate_bicliques
from .errors import KonectParseError, OracleGuardError
from .graph import BipartiteGraph, SizeConstraints, dump_konect, gen_random_bipartite, load_konect, parse_gen_spec
from .oracle import GUARD, compare, oracle_enumerate
from .results import Digest

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_TRUNCATED, EXIT_DIFF = 0, 1, 2, 3, 4

TIERS = ("basic", "bps", "ips")
IE_MODES = ("off", "arbitrary", "degree", "degeneracy", "unilateral")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--input", metavar="PATH", help="KONECT edge list")
    src.add_argument("--gen", metavar="SPEC", help="crown:H | random:LxR:P:seedS | biplex:LxR:seedS")


def _add_algo(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", choices=TIERS, default="ips")
    p.add_argument("--ie", choices=IE_MODES, default="off")
    p.add_argument("--tau-l", type=int, default=1)
    p.add_argument("--tau-r", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicliques", description="Maximal biclique enumeration")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("enumerate", "count"):
        p = sub.add_parser(name, help="enumerate maximal bicliques" if name == "enumerate" else "count them")
        _add_source(p)
        _add_algo(p)
        p.add_argument("--output", default="-", metavar="PATH")
        p.add_argument("--format", choices=("lines", "json"), default="lines")
        p.add_argument("--count-only", action="store_true")
        p.add_argument("--limit", type=int, metavar="K")
        p.add_argument("--time-budget", type=float, metavar="SECONDS")
        p.add_argument("--stats", metavar="PATH", help="write a JSON run report")

    p = sub.add_parser("generate", help="write a generated graph as a KONECT edge list")
    p.add_argument("spec")
    p.add_argument("--output", default="-", metavar="PATH")

    p = sub.add_parser("verify", help="compare the enumerator against the brute-force oracle")
    _add_source(p, required=False)
    _add_algo(p)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", help="benchmark a suite of datasets")
    p.add_argument("--suite", required=True, metavar="FILE")
    p.add_argument("--algos", default="basic,bps,ips")
    p.add_argument("--ie", default="off", help="comma-separated orderings")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--report", default="-", metavar="PATH")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _load_graph(args) -> tuple[BipartiteGraph, str]:
    if args.gen:
        try:
            return parse_gen_spec(args.gen), args.gen
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    with open(args.input) as fh:
        return load_konect(fh), args.input


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w")


def _config(args, **extra) -> EnumConfig:
    try:
        return EnumConfig(
            tier=args.algo,
            ie_mode=args.ie,
            constraints=SizeConstraints(args.tau_l, args.tau_r),
            **extra,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args) -> int:
    g, label = _load_graph(args)
    cfg = _config(args, emit_limit=args.limit, time_budget=args.time_budget)
    count_only = args.count_only or args.command == "count"
    digest = Digest()
    out = _open_out(args.output)
    try:
        if count_only:
            sink = digest.add
        elif args.format == "json":

            def sink(r):
                digest.add(r)
                out.write(json.dumps({"left": list(r.left), "right": list(r.right)}) + "\n")

        else:

            def sink(r):
                digest.add(r)
                out.write(r.format_line() + "\n")

        start = time.perf_counter()
        stats = enumerate_bicliques(g, cfg, sink)
        wall = time.perf_counter() - start
        if count_only:
            out.write(f"{stats.outputs}\n")
    finally:
        if out is not sys.stdout:
            out.close()
        else:
            out.flush()

    if args.stats:
        report = {
            "dataset": label,
            "config": cfg.echo(),
            "stats": stats.counters(),
            "wall_clock_seconds": wall,
            "peak_memory_kb": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
            "digest": digest.hexdigest(),
        }
        with open(args.stats, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return EXIT_TRUNCATED if stats.partial else EXIT_OK


def cmd_generate(args) -> int:
    try:
        g = parse_gen_spec(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = _open_out(args.output)
    try:
        dump_konect(g, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _verify_one(g: BipartiteGraph, cfg: EnumConfig, label: str) -> bool:
    got: list = []
    enumerate_bicliques(g, cfg, got.append)
    try:
        expected = oracle_enumerate(g, cfg.constraints)
    except OracleGuardError as exc:
        raise UsageError(str(exc)) from None
    diff = compare(got, expected)
    dupes = len(got) - len(set(got))
    if diff.empty and not dupes:
        return True
    print(f"{label}: enumerator vs oracle differ ({dupes} duplicates)", file=sys.stderr)
    print(diff.report(), file=sys.stderr)
    return False


def cmd_verify(args) -> int:
    cfg = _config(args)
    ok = True
    if args.input or args.gen:
        g, label = _load_graph(args)
        if min(g.left_count, g.right_count) > GUARD:
            raise UsageError(f"graph exceeds the oracle guard ({GUARD} vertices on the smaller side)")
        ok = _verify_one(g, cfg, label)
        checked = 1
    else:
        trials = args.trials if args.trials is not None else 100
        rng = random.Random(args.seed)
        for t in range(trials):
            left, right = rng.randint(1, 10), rng.randint(1, 10)
            p = rng.choice((0.3, 0.5, 0.7, 0.9))
            seed = rng.randrange(1 << 30)
            label = f"random:{left}x{right}:{p}:seed{seed}"
            ok = _verify_one(gen_random_bipartite(left, right, p, seed), cfg, label) and ok
        checked = trials
    print(f"verified {checked} graph(s): {'ok' if ok else 'DIFF'}")
    return EXIT_OK if ok else EXIT_DIFF


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    ies = [a.strip() for a in args.ie.split(",") if a.strip()]
    bad = [a for a in algos if a not in TIERS] + [m for m in ies if m not in IE_MODES]
    if bad or args.repeats < 1:
        raise UsageError(f"bad algorithm/ordering list or repeat count: {bad}")
    entries = bench.read_suite(args.suite)
    rows = bench.run_suite(entries, algos, ies, args.repeats)
    out = _open_out(args.report)
    try:
        bench.write_report(rows, out, args.format)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "count": cmd_enumerate,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bicliques: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KonectParseError as exc:
        print(f"bicliques: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"bicliques: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
