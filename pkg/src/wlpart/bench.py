"""Benchmark runs over strategies, block counts, and seeds, with CSV I/O.

A benchmark cell is one (graph, strategy, k, seed) V-cycle.  Records carry
the quality metrics of the final partition plus the coarse-level wcut the
strategy started from, wall time, and the mvol imbalance
``k * max_b mvol(C_b) / mvol(V)`` (1.0 is perfectly even).

The metrics file is a comma-separated table prefixed by a ``# schema=1``
comment line so later format changes stay detectable; floats are written
with full round-trip precision.  Files are written to a temp file in the
target directory and moved into place, so readers never see a half-written
table.
"""

from __future__ import annotations

import csv
import logging
import os
import tempfile
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .graph import DoublyWeightedGraph, Partition, edge_cut, ncut
from .refine import REFINE_BALANCE_EPS, vcycle

__all__ = [
    "RunConfig",
    "BenchmarkRecord",
    "SummaryRow",
    "run_single",
    "run_benchmark",
    "summarize",
    "write_metrics",
    "read_metrics",
    "write_summary",
    "METRICS_HEADER",
    "SUMMARY_HEADER",
    "SCHEMA_LINE",
]

log = logging.getLogger(__name__)

SCHEMA_LINE = "# schema=1"
METRICS_HEADER = "graph,strategy,k,seed,ncut,wcut_coarse,edge_cut,runtime_ms,imbalance"
SUMMARY_HEADER = ("graph,strategy,k,runs,ncut_mean,ncut_std,ncut_min,"
                  "edge_cut_mean,runtime_ms_mean")


@dataclass(frozen=True)
class RunConfig:
    graph_name: str
    strategy: str
    k: int
    seed: int
    stop_threshold: int | None = None
    epsilon: float = REFINE_BALANCE_EPS


@dataclass(frozen=True)
class BenchmarkRecord:
    graph: str
    strategy: str
    k: int
    seed: int
    ncut: float
    wcut_coarse: float
    edge_cut: float
    runtime_ms: float
    imbalance: float


@dataclass(frozen=True)
class SummaryRow:
    graph: str
    strategy: str
    k: int
    runs: int
    ncut_mean: float
    ncut_std: float
    ncut_min: float
    edge_cut_mean: float
    runtime_ms_mean: float


def imbalance_of(g: DoublyWeightedGraph, p: Partition) -> float:
    loads = np.bincount(p.assignment, weights=g.vertex_weights, minlength=p.k)
    return float(p.k * loads.max() / g.vertex_weights.sum())


def run_single(g: DoublyWeightedGraph, cfg: RunConfig):
    """One timed V-cycle; returns (record, partition)."""
    start = time.perf_counter()
    result = vcycle(g, cfg.k, cfg.strategy, seed=cfg.seed,
                    stop_threshold=cfg.stop_threshold, epsilon=cfg.epsilon)
    elapsed_ms = (time.perf_counter() - start) * 1e3
    p = result.partition
    record = BenchmarkRecord(
        graph=cfg.graph_name,
        strategy=cfg.strategy,
        k=cfg.k,
        seed=cfg.seed,
        ncut=ncut(g, p),
        wcut_coarse=result.coarse_wcut,
        edge_cut=edge_cut(g, p),
        runtime_ms=elapsed_ms,
        imbalance=imbalance_of(g, p),
    )
    return record, p


def run_benchmark(g: DoublyWeightedGraph, graph_name: str, strategies,
                  ks, repeats: int = 10, stop_threshold: int | None = None,
                  epsilon: float = REFINE_BALANCE_EPS) -> list:
    """Full grid: every strategy and k over seeds 1..repeats.

    A failing cell is logged and skipped; one bad configuration should not
    throw away the rest of a long run.
    """
    records = []
    for strategy in strategies:
        for k in ks:
            for seed in range(1, repeats + 1):
                cfg = RunConfig(graph_name, strategy, int(k), seed,
                                stop_threshold, epsilon)
                try:
                    record, _ = run_single(g, cfg)
                except Exception:
                    log.exception("cell failed: graph=%s strategy=%s k=%s "
                                  "seed=%s", graph_name, strategy, k, seed)
                    continue
                records.append(record)
    return records


def summarize(records) -> list:
    """Aggregate records per (graph, strategy, k), in first-seen order."""
    groups: dict = {}
    for r in records:
        groups.setdefault((r.graph, r.strategy, r.k), []).append(r)
    rows = []
    for (graph, strategy, k), cell in groups.items():
        ncuts = np.array([r.ncut for r in cell])
        rows.append(SummaryRow(
            graph=graph,
            strategy=strategy,
            k=k,
            runs=len(cell),
            ncut_mean=float(ncuts.mean()),
            ncut_std=float(ncuts.std()),
            ncut_min=float(ncuts.min()),
            edge_cut_mean=float(np.mean([r.edge_cut for r in cell])),
            runtime_ms_mean=float(np.mean([r.runtime_ms for r in cell])),
        ))
    return rows


def _atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."),
                               prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        # mkstemp files are 0600; give the final table normal umask perms
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _rows_to_csv(header: str, rows) -> str:
    import io

    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header.split(","))
    for row in rows:
        writer.writerow([_format_cell(v) for v in asdict(row).values()])
    return buf.getvalue()


def write_metrics(records, path) -> None:
    _atomic_write_text(Path(path), _rows_to_csv(METRICS_HEADER, records))


def write_summary(rows, path) -> None:
    _atomic_write_text(Path(path), _rows_to_csv(SUMMARY_HEADER, rows))


def read_metrics(path) -> list:
    """Read a metrics table back into BenchmarkRecord rows."""
    with open(path, newline="") as fh:
        data_lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(data_lines)
    header = next(reader, None)
    if header != METRICS_HEADER.split(","):
        raise ValueError(f"unexpected metrics header in {path}: {header}")
    kinds = {f.name: f.type for f in fields(BenchmarkRecord)}
    records = []
    for row in reader:
        if not row:
            continue
        values = {}
        for name, raw in zip(kinds, row):
            values[name] = int(raw) if kinds[name] == "int" else (
                float(raw) if kinds[name] == "float" else raw)
        records.append(BenchmarkRecord(**values))
    return records
