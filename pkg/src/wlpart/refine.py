"""Partition projection, greedy boundary refinement, and the V-cycle driver.

The V-cycle coarsens the input down to a small graph, runs an initial
clustering strategy there, then walks back up: project the partition through
each contraction map and polish it with local moves.  Refinement greedily
relocates boundary vertices by edge-cut gain; a move is applied only if its
recomputed gain is still positive, the destination stays under a balance cap,
and the source block is not emptied, so the edge cut never increases.

With no coarsening at all (the graph is already at or below the stop
threshold) the cycle degenerates to running the strategy once on the input
with its vertex weights replaced by the degrees — there is nothing to project,
so nothing is refined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cluster import STRATEGIES
from .coarsen import Level, build_hierarchy
from .graph import DoublyWeightedGraph, GraphError, Partition, edge_cut, wcut

__all__ = [
    "RefineStats",
    "VCycleResult",
    "project",
    "local_refine",
    "vcycle",
    "default_stop_threshold",
    "REFINE_BALANCE_EPS",
    "MAX_REFINE_PASSES",
]

# a refinement move may not push a block past this fraction over its
# even share of mvol
REFINE_BALANCE_EPS = 0.1
MAX_REFINE_PASSES = 10


def default_stop_threshold(k: int) -> int:
    """Coarsening stops once the graph is this small: enough vertices to
    give every block a real neighborhood, never fewer than 200."""
    return max(200, 30 * k)


@dataclass(frozen=True)
class RefineStats:
    """Outcome of local_refine on one level.

    ``pass_cuts`` holds the edge cut after each pass, so
    ``(edge_cut_before, *pass_cuts)`` is the full non-increasing trail.
    """

    passes: int
    moves: int
    edge_cut_before: float
    edge_cut_after: float
    pass_cuts: tuple = ()


@dataclass(frozen=True)
class VCycleResult:
    partition: Partition
    level_sizes: tuple
    coarse_wcut: float  # wcut of the initial clustering on the coarsest graph
    refine_stats: tuple  # one entry per projection, finest level last


def project(partition: Partition, cmap) -> Partition:
    """Pull a partition of the coarse vertices back to the fine vertices."""
    if partition.assignment.size != cmap.coarse_count:
        raise GraphError("partition does not live on the map's coarse side")
    return Partition(partition.assignment[cmap.fine_to_coarse], partition.k)


def _block_connections(g, assignment, v, k):
    nbr, w = g.neighbors(v)
    mask = nbr != v
    return np.bincount(assignment[nbr[mask]], weights=w[mask], minlength=k)


def local_refine(g: DoublyWeightedGraph, partition: Partition,
                 epsilon: float = REFINE_BALANCE_EPS,
                 max_passes: int = MAX_REFINE_PASSES):
    """Greedy boundary refinement of the edge cut.

    Each pass scans every vertex for its best relocation (largest reduction
    in crossing weight) and tries the candidates in order of that initial
    gain (ties: lowest vertex id).  Because earlier moves change the picture,
    the gain is recomputed before applying; a move happens only if the gain
    is still positive, the destination block stays within
    ``(1+epsilon) * mvol(V)/k``, and the source block keeps at least one
    vertex.  Returns the refined partition and a RefineStats.
    """
    if partition.assignment.size != g.n:
        raise GraphError("partition does not match graph")
    k = partition.k
    assignment = partition.assignment.copy()
    m = g.vertex_weights
    cap = (1.0 + epsilon) * m.sum() / k
    counts = np.bincount(assignment, minlength=k)
    load = np.bincount(assignment, weights=m, minlength=k)
    before = edge_cut(g, partition)
    passes = 0
    total_moves = 0
    pass_cuts = []
    for _ in range(max_passes):
        candidates = []
        for v in range(g.n):
            b = int(assignment[v])
            conn = _block_connections(g, assignment, v, k)
            own = conn[b]
            conn[b] = -np.inf
            c = int(conn.argmax())
            gain = conn[c] - own
            if gain > 0:
                candidates.append((gain, v, c))
        if not candidates:
            break
        passes += 1
        candidates.sort(key=lambda t: (-t[0], t[1]))
        moved = 0
        for _, v, c in candidates:
            b = int(assignment[v])
            if counts[b] <= 1 or load[c] + m[v] > cap:
                continue
            conn = _block_connections(g, assignment, v, k)
            if conn[c] - conn[b] <= 0:
                continue
            assignment[v] = c
            counts[b] -= 1
            counts[c] += 1
            load[b] -= m[v]
            load[c] += m[v]
            moved += 1
        total_moves += moved
        pass_cuts.append(edge_cut(g, Partition(assignment, k)))
        if moved == 0:
            break
    refined = Partition(assignment, k)
    after = pass_cuts[-1] if pass_cuts else before
    return refined, RefineStats(passes, total_moves, before, after,
                                tuple(pass_cuts))


def vcycle(g: DoublyWeightedGraph, k: int, strategy="weighted-spectral",
           seed: int = 0, stop_threshold: int | None = None,
           epsilon: float = REFINE_BALANCE_EPS,
           max_passes: int = MAX_REFINE_PASSES) -> VCycleResult:
    """Coarsen, cluster the coarsest graph, project back with refinement.

    ``strategy`` is a name from STRATEGIES or any callable with the same
    ``(graph, k, seed)`` signature.  The same seed drives the matching, the
    strategy, and nothing else — refinement is deterministic.
    """
    if callable(strategy):
        fn = strategy
    elif strategy in STRATEGIES:
        fn = STRATEGIES[strategy]
    else:
        raise GraphError(
            f"unknown strategy {strategy!r}; expected one of "
            f"{sorted(STRATEGIES)} or a callable")
    if not 1 <= k <= g.n:
        raise GraphError(f"k must be in 1..{g.n}, got {k!r}")
    threshold = default_stop_threshold(k) if stop_threshold is None \
        else max(int(stop_threshold), 1)
    levels = list(build_hierarchy(g, threshold, seed=seed).levels)
    while levels[-1].graph.n < k:  # keep the coarsest graph solvable
        levels.pop()
        levels[-1] = Level(levels[-1].graph, None)
    coarse_g = levels[-1].graph
    if len(levels) == 1:
        # nothing was contracted: hand the strategy the input graph with
        # degrees as vertex weights, the same substitution a first
        # contraction would have made
        coarse_g = coarse_g.with_vertex_weights(coarse_g.degrees)
    p = fn(coarse_g, k, seed)
    coarse_wcut = wcut(coarse_g, p)
    stats = []
    for lvl in reversed(levels[:-1]):
        p = project(p, lvl.to_coarser)
        p, st = local_refine(lvl.graph, p, epsilon, max_passes)
        stats.append(st)
    return VCycleResult(p, tuple(lvl.graph.n for lvl in levels),
                        coarse_wcut, tuple(stats))
