"""Multilevel coarsening: randomized heavy-edge matching and contraction.

Contraction of a group sums all edge weights between groups; weight internal
to a group is retained as a self-loop (both endpoints' rows contribute, so a
single internal edge of weight w becomes a self-loop of weight 2w).  Total
stored edge weight and total degree are therefore conserved level to level.

Coarse vertex weights accumulate *degrees* of the original graph: the first
contraction sums fine degrees, every deeper contraction sums the already
accumulated fine vertex weights.  This is what ties a coarse partition's
mvol to the original graph's vol and makes the degree-normalized cut of a
projected partition equal the vertex-weight-normalized cut of the coarse one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import DoublyWeightedGraph, GraphError

__all__ = [
    "CoarseMap",
    "Level",
    "Hierarchy",
    "match_heavy_edge",
    "contract",
    "build_hierarchy",
    "MIN_RELATIVE_REDUCTION",
]

# a matching round must shrink the graph by at least this fraction,
# otherwise the hierarchy stops (guards against matching stalls)
MIN_RELATIVE_REDUCTION = 0.02


@dataclass(frozen=True)
class CoarseMap:
    """Surjective map from fine vertex ids onto coarse ids 0..coarse_count-1."""

    fine_to_coarse: np.ndarray
    coarse_count: int

    def __post_init__(self):
        f2c = np.ascontiguousarray(self.fine_to_coarse, dtype=np.int64)
        f2c.setflags(write=False)
        object.__setattr__(self, "fine_to_coarse", f2c)
        if f2c.ndim != 1 or f2c.size == 0:
            raise GraphError("fine_to_coarse must be a nonempty 1-d array")
        if self.coarse_count < 1 or f2c.min() < 0 or f2c.max() >= self.coarse_count:
            raise GraphError("coarse ids out of range")
        if np.unique(f2c).size != self.coarse_count:
            raise GraphError("map must be surjective onto the coarse ids")

    @property
    def fine_count(self) -> int:
        return self.fine_to_coarse.size

    @classmethod
    def identity(cls, n: int) -> "CoarseMap":
        return cls(np.arange(n, dtype=np.int64), n)

    def compose(self, coarser: "CoarseMap") -> "CoarseMap":
        """This map followed by a map defined on its coarse ids."""
        if coarser.fine_count != self.coarse_count:
            raise GraphError("maps do not chain: size mismatch")
        return CoarseMap(coarser.fine_to_coarse[self.fine_to_coarse],
                         coarser.coarse_count)


def match_heavy_edge(g: DoublyWeightedGraph, seed_or_rng=0) -> CoarseMap:
    """Randomized heavy-edge matching.

    Vertices are visited in a seeded random order; an unmatched vertex pairs
    with its heaviest unmatched neighbor (ties broken toward the lowest id),
    or stays a singleton when no unmatched neighbor exists.  Supernode ids
    are numbered by each group's smallest fine member, so the result depends
    on the seed only through the matching itself.
    """
    rng = (seed_or_rng if isinstance(seed_or_rng, np.random.Generator)
           else np.random.default_rng(seed_or_rng))
    n = g.n
    mate = np.full(n, -1, dtype=np.int64)
    for v in rng.permutation(n):
        v = int(v)
        if mate[v] != -1:
            continue
        nbr, w = g.neighbors(v)
        ok = (nbr != v) & (w > 0) & (mate[nbr] == -1)
        if not ok.any():
            mate[v] = v
            continue
        cand_ids = nbr[ok]
        cand_w = w[ok]
        best = cand_ids[cand_w == cand_w.max()].min()
        mate[v] = best
        mate[best] = v
    rep = np.minimum(np.arange(n, dtype=np.int64), mate)
    reps_sorted = np.unique(rep)
    fine_to_coarse = np.searchsorted(reps_sorted, rep)
    return CoarseMap(fine_to_coarse, reps_sorted.size)


def contract(g: DoublyWeightedGraph, cmap: CoarseMap,
             vertex_weight_source: str = "degrees") -> DoublyWeightedGraph:
    """Contract each group of cmap into one supernode.

    Edge weights accumulate by group (intra-group weight becomes a retained
    self-loop).  Coarse vertex weights are group sums of the fine *degrees*
    (``vertex_weight_source="degrees"``, the rule for contracting a base
    graph — an identity map therefore replaces M with diag(d)) or of the fine
    *vertex weights* (``"vertex_weights"``, the rule for deeper levels where
    fine weights are already degree accumulators).
    """
    if cmap.fine_count != g.n:
        raise GraphError("map size does not match graph")
    if vertex_weight_source == "degrees":
        acc = g.degrees
    elif vertex_weight_source == "vertex_weights":
        acc = g.vertex_weights
    else:
        raise GraphError(f"unknown vertex_weight_source {vertex_weight_source!r}")
    cc = cmap.coarse_count
    src = cmap.fine_to_coarse[g.row_index()]
    dst = cmap.fine_to_coarse[g.indices]
    w = g.weights
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    if src.size:
        new_group = np.empty(src.size, dtype=bool)
        new_group[0] = True
        new_group[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        group_id = np.cumsum(new_group) - 1
        w = np.bincount(group_id, weights=w)
        src, dst = src[new_group], dst[new_group]
    indptr = np.zeros(cc + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=cc), out=indptr[1:])
    coarse_vw = np.bincount(cmap.fine_to_coarse, weights=acc, minlength=cc)
    return DoublyWeightedGraph(indptr, dst, w, coarse_vw, validate=False)


@dataclass(frozen=True)
class Level:
    """One hierarchy level: its graph and the map to the next-coarser level
    (None at the coarsest)."""

    graph: DoublyWeightedGraph
    to_coarser: CoarseMap | None


@dataclass(frozen=True)
class Hierarchy:
    """Graphs from finest (the input) to coarsest, with the contraction maps
    between consecutive levels."""

    levels: list[Level] = field(default_factory=list)

    def __post_init__(self):
        if not self.levels:
            raise GraphError("hierarchy needs at least one level")
        if self.levels[-1].to_coarser is not None:
            raise GraphError("coarsest level must not carry a map")
        for lvl in self.levels[:-1]:
            if lvl.to_coarser is None:
                raise GraphError("inner level is missing its map")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def finest(self) -> DoublyWeightedGraph:
        return self.levels[0].graph

    @property
    def coarsest(self) -> DoublyWeightedGraph:
        return self.levels[-1].graph

    def map_to_coarsest(self) -> CoarseMap:
        """Composition of all contraction maps (identity for depth 1)."""
        composed = CoarseMap.identity(self.finest.n)
        for lvl in self.levels[:-1]:
            composed = composed.compose(lvl.to_coarser)
        return composed


def build_hierarchy(g: DoublyWeightedGraph, stop_threshold: int,
                    seed: int = 0) -> Hierarchy:
    """Coarsen by repeated match+contract until the graph has at most
    stop_threshold vertices or a round shrinks it by under 2%."""
    if stop_threshold < 1:
        raise GraphError("stop_threshold must be positive")
    rng = np.random.default_rng(seed)
    levels: list[Level] = []
    current = g
    first = True
    while current.n > stop_threshold:
        cmap = match_heavy_edge(current, rng)
        if current.n - cmap.coarse_count < MIN_RELATIVE_REDUCTION * current.n:
            break  # stalled: stop rather than loop on an incompressible graph
        coarse = contract(current, cmap,
                          "degrees" if first else "vertex_weights")
        levels.append(Level(current, cmap))
        current = coarse
        first = False
    levels.append(Level(current, None))
    return Hierarchy(levels)
