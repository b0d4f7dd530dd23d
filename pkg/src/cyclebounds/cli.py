"""Command line entry point (``cyclebounds`` / ``python -m cyclebounds``)."""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .bounds import Interval
from .enumeration import DEFAULT_CYCLE_CAP, collect_cycles, dump_cycles
from .generators import random_cyclic_topology
from .graph import GraphError, WeightedDigraph, parse_edge_list, serialize_edge_list
from .harness import AnalysisOptions, analyze, bench
from .report import emit_report
from .weightgen import DISTRIBUTIONS, WeightSpec, assign_weights

log = logging.getLogger("cyclebounds")


def _read_graph(path: str) -> WeightedDigraph:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse_edge_list(data)


def _write(out: Optional[str], data: bytes) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _num(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x} ({float(x):.2f})"
    return str(x)


def _interval(iv: Interval) -> str:
    lo = "-inf" if iv.lo is None else _num(iv.lo)
    hi = "+inf" if iv.hi is None else _num(iv.hi)
    return f"[{lo}, {hi}]"


def _options(args) -> AnalysisOptions:
    return AnalysisOptions(
        ground_truth=getattr(args, "ground_truth", True),
        max_cycles=args.max_cycles,
        timeout=args.timeout,
    )


def cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    name = Path(args.graph).stem if args.graph != "-" else "stdin"
    records = analyze(g, _options(args), name=name)
    _write(args.output, emit_report(records, args.format))
    return 0


def cmd_bounds(args) -> int:
    g = _read_graph(args.graph)
    records = analyze(g, AnalysisOptions(ground_truth=False))
    lines = []
    for r in records:
        lines.append(f"scc {r.component}: n={r.n} m={r.m}")
        if r.error:
            lines.append(f"  error: {r.error}")
            continue
        b, e = r.bounds, r.estimates
        lines += [
            f"  lambda_min = {_num(r.lambda_min)}  witness {' '.join(map(str, r.witness_min.nodes))}",
            f"  lambda_max = {_num(r.lambda_max)}  witness {' '.join(map(str, r.witness_max.nodes))}",
            f"  critical cycles: min {b.critical_min.count}{' (truncated)' if b.critical_min.truncated else ''}, "
            f"max {b.critical_max.count}{' (truncated)' if b.critical_max.truncated else ''}",
            f"  sign of w(L): {b.sign}",
            f"  |L_w| in {_interval(b.lw_length)}   w(L_w) in {_interval(b.lw_weight)}",
            f"  |L_l| in {_interval(b.ll_length)}   w(L_l) in {_interval(b.ll_weight)}",
            f"  |S_w| in {_interval(b.sw_length)}   w(S_w) in {_interval(b.sw_weight)}",
            f"  |S_l| in {_interval(b.sl_length)}   w(S_l) in {_interval(b.sl_weight)}",
            f"  longest path: >= {b.path.length_lo} arcs"
            + ("" if b.path.weight_lo is None else
               f", weight >= {_num(b.path.weight_lo)}{' (vacuous)' if b.path.vacuous else ''}"),
            f"  lambda_avg = {_num(e.lambda_avg)}  lambda_geo = "
            + ("n/a" if e.lambda_geo is None else f"{e.lambda_geo:.2f}"),
            "  rho = " + ("n/a" if b.rho is None else _num(b.rho))
            + "  delta = " + ("n/a" if e.delta is None else _num(e.delta)),
        ]
        lines += [f"  note: {n}" for n in b.notes]
    if not records:
        lines.append("no cycles: every SCC is trivial")
    _write(None, ("\n".join(lines) + "\n").encode())
    return 0


def cmd_enumerate(args) -> int:
    g = _read_graph(args.graph)
    cycles, status = collect_cycles(g, cap=args.max_cycles, timeout=args.timeout)
    print(f"cycles: {status.count} ({status.label})")
    if args.dump:
        Path(args.dump).write_text(dump_cycles(g, cycles))
    return 0


def cmd_gen_weights(args) -> int:
    topology = _read_graph(args.input)
    spec = WeightSpec(args.dist, args.min, args.max, args.seed)
    g = assign_weights(topology, spec)
    header = f"# weights: {args.dist} [{args.min}, {args.max}] seed {args.seed}\n"
    _write(args.output, (header + serialize_edge_list(g)).encode())
    return 0


def cmd_gen_topology(args) -> int:
    rng = np.random.default_rng(args.seed)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        g = random_cyclic_topology(rng, args.n, args.m, args.feedback, args.span, args.max_cycles)
        (out / f"{args.prefix}{i + 1:03d}.graph").write_text(serialize_edge_list(g))
    return 0


def cmd_bench(args) -> int:
    records, meta = bench(args.directory, args.dist, args.seed, _options(args), args.min, args.max)
    _write(args.output, emit_report(records, args.format, meta))
    return 0


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclebounds", description=__doc__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def caps(sp, ground_truth_flag: bool) -> None:
        if ground_truth_flag:
            sp.add_argument("--ground-truth", action="store_true",
                            help="enumerate all simple cycles to get the true extremes")
        sp.add_argument("--max-cycles", type=int, default=DEFAULT_CYCLE_CAP, metavar="K")
        sp.add_argument("--timeout", type=float, default=None, metavar="S",
                        help="enumeration time limit per component, seconds")

    def report_opts(sp) -> None:
        sp.add_argument("--format", choices=("csv", "md", "markdown", "json"), default="csv")
        sp.add_argument("-o", "--output", default=None)

    sp = sub.add_parser("analyze", help="bounds and estimates per SCC as a report")
    sp.add_argument("graph")
    caps(sp, True)
    report_opts(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("bounds", help="human-readable bounds per SCC")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("enumerate", help="count (and optionally dump) simple cycles")
    sp.add_argument("graph")
    caps(sp, False)
    sp.add_argument("--dump", metavar="FILE")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("gen-weights", help="assign seeded random weights to a topology")
    sp.add_argument("input")
    sp.add_argument("output")
    sp.add_argument("--dist", choices=DISTRIBUTIONS, required=True)
    sp.add_argument("--min", type=int, default=1)
    sp.add_argument("--max", type=int, default=3000)
    sp.add_argument("--seed", type=_seed, required=True)
    sp.set_defaults(func=cmd_gen_weights)

    sp = sub.add_parser("gen-topology", help="write random circuit-like cyclic topologies")
    sp.add_argument("outdir")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--m", type=int, default=200)
    sp.add_argument("--feedback", type=int, default=16)
    sp.add_argument("--span", type=int, default=6)
    sp.add_argument("--max-cycles", type=int, default=100_000)
    sp.add_argument("--prefix", default="g")
    sp.add_argument("--seed", type=_seed, required=True)
    sp.set_defaults(func=cmd_gen_topology)

    sp = sub.add_parser("bench", help="weight and analyze every *.graph in a directory")
    sp.add_argument("directory")
    sp.add_argument("--dist", choices=DISTRIBUTIONS, required=True)
    sp.add_argument("--seed", type=_seed, required=True)
    sp.add_argument("--min", type=int, default=1)
    sp.add_argument("--max", type=int, default=3000)
    caps(sp, False)
    report_opts(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, GraphError) as exc:
        print(f"cyclebounds: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # invalid option combinations, e.g. a bad weight range
        print(f"cyclebounds: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
