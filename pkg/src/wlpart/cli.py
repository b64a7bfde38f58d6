"""Command-line interface.

Two subcommands::

    wlpart partition GRAPH --k K [options]   one partition, ids to a file
                                             or stdout
    wlpart bench GRAPH [GRAPH ...] [options] strategy comparison grid; writes
                                             metrics.csv, summary.csv and a
                                             bar chart per output directory

Exit codes: 0 success, 2 unusable input (unreadable or malformed graph file,
disconnected graph without --largest-component, bad k), 3 solver failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import (
    RunConfig,
    run_benchmark,
    run_single,
    summarize,
    write_metrics,
    write_summary,
)
from .cluster import STRATEGIES
from .eigen import EigenSolverError
from .graph import GraphError, Partition, connected_components, induced_subgraph
from .metisio import MetisFormatError, parse_metis, write_partition
from .refine import REFINE_BALANCE_EPS

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3


def _fail_input(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _load_graph(path_str: str):
    path = Path(path_str)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MetisFormatError(f"cannot read {path}: {exc.strerror or exc}",
                               0) from exc
    return parse_metis(text)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _strategy_list(text: str) -> list[str]:
    names = [tok.strip() for tok in text.split(",") if tok.strip()]
    unknown = [n for n in names if n not in STRATEGIES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown strategies {unknown}; choose from {sorted(STRATEGIES)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlpart",
        description="multilevel partitioning of doubly-weighted graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition one graph")
    p.add_argument("graph", help="graph file (adjacency-list format)")
    p.add_argument("--k", type=int, required=True, help="number of blocks")
    p.add_argument("--strategy", choices=sorted(STRATEGIES),
                   default="weighted-spectral")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=int, default=None,
                   help="coarsening stop size (default: max(200, 30k))")
    p.add_argument("--epsilon", type=float, default=REFINE_BALANCE_EPS,
                   help="refinement balance tolerance")
    p.add_argument("--out", type=Path, default=None,
                   help="partition file (default: block ids to stdout)")
    p.add_argument("--metrics", type=Path, default=None,
                   help="also write a one-row metrics table here")
    p.add_argument("--largest-component", action="store_true",
                   help="partition the largest component of a disconnected "
                        "graph; other vertices go to block 0")

    b = sub.add_parser("bench", help="compare strategies over seeds")
    b.add_argument("graphs", nargs="+", help="graph files")
    b.add_argument("--k", type=_int_list, default=[4],
                   help="comma-separated block counts (default 4)")
    b.add_argument("--strategies", type=_strategy_list,
                   default=sorted(STRATEGIES),
                   help="comma-separated strategy names (default: all)")
    b.add_argument("--repeats", type=int, default=10,
                   help="seeds 1..repeats per cell (default 10)")
    b.add_argument("--threshold", type=int, default=None)
    b.add_argument("--epsilon", type=float, default=REFINE_BALANCE_EPS)
    b.add_argument("--outdir", type=Path, default=Path("."),
                   help="where metrics.csv, summary.csv and the chart go")
    b.add_argument("--no-plot", action="store_true",
                   help="skip rendering the bar chart")
    b.add_argument("--largest-component", action="store_true")
    return parser


def _prepared_graph(path: str, use_largest: bool):
    """Load a graph and resolve connectivity.

    Returns (graph_to_partition, original_n, kept_vertex_ids or None).
    """
    g = _load_graph(path)
    comp = connected_components(g)
    n_comp = int(comp.max()) + 1
    if n_comp == 1:
        return g, g.n, None
    if not use_largest:
        raise GraphError(
            f"graph is disconnected ({n_comp} components); "
            "rerun with --largest-component")
    largest = int(np.bincount(comp).argmax())
    sub, kept = induced_subgraph(g, np.flatnonzero(comp == largest))
    return sub, g.n, kept


def _cmd_partition(args) -> int:
    try:
        g, full_n, kept = _prepared_graph(args.graph, args.largest_component)
    except MetisFormatError as exc:
        return _fail_input(str(exc))
    except GraphError as exc:
        return _fail_input(str(exc))
    if not 1 <= args.k <= g.n:
        return _fail_input(f"k must be in 1..{g.n}, got {args.k}")
    cfg = RunConfig(Path(args.graph).name, args.strategy, args.k, args.seed,
                    args.threshold, args.epsilon)
    try:
        record, p = run_single(g, cfg)
    except EigenSolverError as exc:
        print(f"error: eigensolver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except GraphError as exc:
        return _fail_input(str(exc))
    if kept is not None:
        # everything outside the partitioned component lands in block 0
        assignment = np.zeros(full_n, dtype=np.int64)
        assignment[kept] = p.assignment
        p = Partition(assignment, p.k, allow_empty=True)
    if args.out is not None:
        write_partition(p, args.out)
    else:
        sys.stdout.write("".join(f"{b}\n" for b in p.assignment))
    if args.metrics is not None:
        write_metrics([record], args.metrics)
    print(f"ncut={record.ncut:.6g} edge_cut={record.edge_cut:.6g} "
          f"imbalance={record.imbalance:.4g} "
          f"runtime_ms={record.runtime_ms:.1f}", file=sys.stderr)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.repeats < 1:
        return _fail_input("--repeats must be at least 1")
    records = []
    for path in args.graphs:
        try:
            g, _, _ = _prepared_graph(path, args.largest_component)
        except (MetisFormatError, GraphError) as exc:
            return _fail_input(str(exc))
        bad_k = [k for k in args.k if not 1 <= k <= g.n]
        if bad_k:
            return _fail_input(f"k values {bad_k} out of 1..{g.n} for {path}")
        records.extend(run_benchmark(
            g, Path(path).name, args.strategies, args.k,
            repeats=args.repeats, stop_threshold=args.threshold,
            epsilon=args.epsilon))
    if not records:
        print("error: every benchmark cell failed", file=sys.stderr)
        return EXIT_SOLVER
    args.outdir.mkdir(parents=True, exist_ok=True)
    write_metrics(records, args.outdir / "metrics.csv")
    rows = summarize(records)
    write_summary(rows, args.outdir / "summary.csv")
    if not args.no_plot:
        from .plots import save_ncut_bars

        save_ncut_bars(rows, args.outdir / "ncut_by_strategy.png")
    expected = len(args.graphs) * len(args.strategies) * len(args.k) \
        * args.repeats
    print(f"wrote {len(records)}/{expected} runs to {args.outdir}",
          file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "partition":
        return _cmd_partition(args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
