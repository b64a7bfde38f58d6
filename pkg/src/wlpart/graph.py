"""Doubly-weighted graphs and partition quality metrics.

A doubly-weighted graph carries a positive weight m_i on every vertex and a
nonnegative weight W_ij on every undirected edge (self-loops permitted).  The
degree of a vertex is the sum of its incident edge weights, self-loop
included.  Two volume notions coexist:

    mvol(S) = sum of vertex weights over S
    vol(S)  = sum of degrees over S

and the corresponding partition objectives are

    wcut(P) = sum_b Cut(C_b, complement) / mvol(C_b)
    ncut(P) = sum_b Cut(C_b, complement) / vol(C_b)

so ncut is exactly wcut with vertex weights replaced by degrees.

Adjacency is stored CSR-style (indptr/indices/weights); every undirected edge
appears as two symmetric entries, a self-loop as one diagonal entry.  Weights
are float64 even when the input was integral.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

__all__ = [
    "GraphError",
    "DoublyWeightedGraph",
    "Partition",
    "cut",
    "mvol",
    "vol",
    "wcut",
    "ncut",
    "edge_cut",
    "block_boundary_weights",
    "is_connected",
    "connected_components",
    "induced_subgraph",
]


class GraphError(ValueError):
    """Invalid graph data or an invalid operation on a graph."""


class DoublyWeightedGraph:
    """Immutable undirected graph with vertex weights M and edge weights W.

    Attributes:
        n: number of vertices.
        indptr, indices, weights: CSR adjacency; symmetric by construction.
        vertex_weights: positive float64 array of length n (the M diagonal).
        degrees: cached row sums d_i = sum_j W_ij (self-loop counted once).
    """

    __slots__ = ("n", "indptr", "indices", "weights", "vertex_weights", "degrees", "_row")

    def __init__(self, indptr, indices, weights, vertex_weights=None, validate=True):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.weights = np.ascontiguousarray(weights, dtype=np.float64)
        self.n = self.indptr.size - 1
        if vertex_weights is None:
            vertex_weights = np.ones(self.n)
        self.vertex_weights = np.ascontiguousarray(vertex_weights, dtype=np.float64)
        self._row = None
        if validate:
            self._validate()
        counts = np.diff(self.indptr)
        row = np.repeat(np.arange(self.n, dtype=np.int64), counts)
        self._row = row
        self.degrees = np.bincount(row, weights=self.weights, minlength=self.n)
        for arr in (self.indptr, self.indices, self.weights, self.vertex_weights,
                    self.degrees, self._row):
            arr.setflags(write=False)

    def _validate(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        if self.indptr[0] != 0 or self.indptr[-1] != self.indices.size:
            raise GraphError("malformed indptr")
        if np.any(np.diff(self.indptr) < 0):
            raise GraphError("indptr must be nondecreasing")
        if self.indices.size != self.weights.size:
            raise GraphError("indices and weights length mismatch")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= self.n):
            raise GraphError("neighbor index out of range")
        if np.any(self.weights < 0):
            raise GraphError("edge weights must be nonnegative")
        if self.vertex_weights.shape != (self.n,):
            raise GraphError("vertex_weights must have length n")
        if np.any(self.vertex_weights <= 0):
            raise GraphError("vertex weights must be positive")
        # Symmetry: the multiset of (i, j, w) entries must equal its transpose.
        counts = np.diff(self.indptr)
        row = np.repeat(np.arange(self.n, dtype=np.int64), counts)
        col = self.indices
        fwd = np.lexsort((col, row))
        rev = np.lexsort((row, col))
        if not (np.array_equal(row[fwd], col[rev]) and np.array_equal(col[fwd], row[rev])
                and np.array_equal(self.weights[fwd], self.weights[rev])):
            raise GraphError("adjacency is not symmetric")
        # Duplicate (i, j) entries would make neighbor queries ambiguous.
        key_rows = row[fwd]
        key_cols = col[fwd]
        if key_rows.size > 1:
            same = (key_rows[1:] == key_rows[:-1]) & (key_cols[1:] == key_cols[:-1])
            if same.any():
                raise GraphError("duplicate adjacency entries")

    # ---------------------------------------------------------------- builders

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]],
                   vertex_weights=None) -> "DoublyWeightedGraph":
        """Build from undirected edges given once each; (i, i, w) is a self-loop.

        Duplicate pairs are summed.  Zero-weight edges are kept as stored
        entries (they do not connect for reachability purposes).
        """
        rows, cols, wts = [], [], []
        for i, j, w in edges:
            i, j, w = int(i), int(j), float(w)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if w < 0:
                raise GraphError(f"negative weight on edge ({i}, {j})")
            rows.append(i)
            cols.append(j)
            wts.append(w)
            if i != j:
                rows.append(j)
                cols.append(i)
                wts.append(w)
        row = np.asarray(rows, dtype=np.int64)
        col = np.asarray(cols, dtype=np.int64)
        wt = np.asarray(wts, dtype=np.float64)
        order = np.lexsort((col, row))
        row, col, wt = row[order], col[order], wt[order]
        if row.size:
            new_group = np.empty(row.size, dtype=bool)
            new_group[0] = True
            new_group[1:] = (row[1:] != row[:-1]) | (col[1:] != col[:-1])
            group_id = np.cumsum(new_group) - 1
            wt = np.bincount(group_id, weights=wt)
            row, col = row[new_group], col[new_group]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(row, minlength=n), out=indptr[1:])
        return cls(indptr, col, wt, vertex_weights, validate=False)._with_checked_vw()

    def _with_checked_vw(self):
        if np.any(self.vertex_weights <= 0):
            raise GraphError("vertex weights must be positive")
        return self

    @classmethod
    def from_dense(cls, adjacency, vertex_weights=None) -> "DoublyWeightedGraph":
        """Build from a symmetric dense weight matrix (zeros mean no edge)."""
        a = np.asarray(adjacency, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency is not symmetric")
        n = a.shape[0]
        edges = [(i, j, a[i, j]) for i in range(n) for j in range(i, n) if a[i, j] != 0.0]
        return cls.from_edges(n, edges, vertex_weights)

    # ---------------------------------------------------------------- queries

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and edge weights of v (views, do not mutate)."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def row_index(self) -> np.ndarray:
        """Source vertex of every stored CSR entry."""
        return self._row

    @property
    def num_edges(self) -> int:
        """Undirected edge count; each self-loop counts once."""
        loops = int(np.count_nonzero(self.indices == self._row))
        return (self.indices.size - loops) // 2 + loops

    def has_self_loops(self) -> bool:
        return bool(np.any(self.indices == self._row))

    def dense_adjacency(self) -> np.ndarray:
        w = np.zeros((self.n, self.n))
        w[self._row, self.indices] = self.weights
        return w

    def edge_iter(self):
        """Yield each undirected edge once as (i, j, w) with i <= j."""
        keep = self._row <= self.indices
        for i, j, w in zip(self._row[keep], self.indices[keep], self.weights[keep]):
            yield int(i), int(j), float(w)

    def with_vertex_weights(self, vertex_weights) -> "DoublyWeightedGraph":
        """Same adjacency, new M diagonal."""
        return DoublyWeightedGraph(self.indptr, self.indices, self.weights,
                                   vertex_weights, validate=False)._with_checked_vw()

    def __repr__(self):
        return f"DoublyWeightedGraph(n={self.n}, edges={self.num_edges})"


class Partition:
    """Assignment of every vertex to one of k blocks (ids 0..k-1).

    Blocks must be nonempty unless allow_empty is set; the metric functions
    below reject empty blocks regardless.
    """

    __slots__ = ("assignment", "k")

    def __init__(self, assignment, k: int | None = None, allow_empty: bool = False):
        a = np.array(assignment, dtype=np.int64)
        if a.ndim != 1 or a.size == 0:
            raise GraphError("assignment must be a nonempty 1-d array")
        if k is None:
            k = int(a.max()) + 1
        if a.min() < 0 or a.max() >= k:
            raise GraphError(f"block ids must lie in [0, {k})")
        if not allow_empty:
            present = np.bincount(a, minlength=k)
            if np.any(present == 0):
                empty = int(np.flatnonzero(present == 0)[0])
                raise GraphError(f"block {empty} is empty")
        a.setflags(write=False)
        self.assignment = a
        self.k = int(k)

    @property
    def n(self) -> int:
        return self.assignment.size

    def blocks(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.assignment == b) for b in range(self.k)]

    def block_sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def canonical(self) -> np.ndarray:
        """Relabel blocks by order of first appearance (for comparisons up to
        label permutation)."""
        mapping = {}
        out = np.empty_like(self.assignment)
        for idx, b in enumerate(self.assignment):
            out[idx] = mapping.setdefault(int(b), len(mapping))
        return out

    def same_blocks(self, other: "Partition") -> bool:
        return self.k == other.k and np.array_equal(self.canonical(), other.canonical())

    def __eq__(self, other):
        return (isinstance(other, Partition) and self.k == other.k
                and np.array_equal(self.assignment, other.assignment))

    def __repr__(self):
        return f"Partition(k={self.k}, n={self.n})"


# -------------------------------------------------------------------- metrics


def _as_index_array(g: DoublyWeightedGraph, s) -> np.ndarray:
    idx = np.asarray(sorted(s) if isinstance(s, (set, frozenset)) else s, dtype=np.int64)
    if idx.ndim != 1:
        raise GraphError("vertex set must be one-dimensional")
    if idx.size and (idx.min() < 0 or idx.max() >= g.n):
        raise GraphError("vertex id out of range")
    if np.unique(idx).size != idx.size:
        raise GraphError("vertex set contains duplicates")
    return idx


def cut(g: DoublyWeightedGraph, a, b) -> float:
    """Total edge weight between disjoint vertex sets a and b.

    Each undirected crossing edge is counted once; overlapping sets are an
    error.  Self-loops never cross.
    """
    ia = _as_index_array(g, a)
    ib = _as_index_array(g, b)
    in_a = np.zeros(g.n, dtype=bool)
    in_b = np.zeros(g.n, dtype=bool)
    in_a[ia] = True
    in_b[ib] = True
    if np.any(in_a & in_b):
        raise GraphError("cut requires disjoint vertex sets")
    src = g.row_index()
    mask = in_a[src] & in_b[g.indices]
    return float(g.weights[mask].sum())


def mvol(g: DoublyWeightedGraph, s) -> float:
    """Vertex-weight volume of a nonempty vertex set."""
    idx = _as_index_array(g, s)
    if idx.size == 0:
        raise GraphError("mvol of an empty vertex set")
    return float(g.vertex_weights[idx].sum())


def vol(g: DoublyWeightedGraph, s) -> float:
    """Degree volume of a nonempty vertex set."""
    idx = _as_index_array(g, s)
    if idx.size == 0:
        raise GraphError("vol of an empty vertex set")
    v = float(g.degrees[idx].sum())
    if v == 0.0:
        raise GraphError("vertex set has zero degree volume")
    return v


def block_boundary_weights(g: DoublyWeightedGraph, p: Partition) -> np.ndarray:
    """Per-block boundary weight: Cut(C_b, complement) for every block b."""
    if p.n != g.n:
        raise GraphError("partition length does not match graph")
    lab = p.assignment
    src = g.row_index()
    crossing = lab[src] != lab[g.indices]
    return np.bincount(lab[src][crossing], weights=g.weights[crossing], minlength=p.k)


def _check_blocks_nonempty(p: Partition):
    sizes = p.block_sizes()
    if np.any(sizes == 0):
        raise GraphError("metric rejects partitions with empty blocks")


def wcut(g: DoublyWeightedGraph, p: Partition) -> float:
    """Sum over blocks of Cut(C_b, complement) / mvol(C_b)."""
    _check_blocks_nonempty(p)
    boundary = block_boundary_weights(g, p)
    mvols = np.bincount(p.assignment, weights=g.vertex_weights, minlength=p.k)
    return float((boundary / mvols).sum())


def ncut(g: DoublyWeightedGraph, p: Partition) -> float:
    """Sum over blocks of Cut(C_b, complement) / vol(C_b)."""
    _check_blocks_nonempty(p)
    boundary = block_boundary_weights(g, p)
    vols = np.bincount(p.assignment, weights=g.degrees, minlength=p.k)
    if np.any(vols == 0):
        raise GraphError("block with zero degree volume")
    return float((boundary / vols).sum())


def edge_cut(g: DoublyWeightedGraph, p: Partition) -> float:
    """Total weight of edges whose endpoints lie in different blocks."""
    if p.n != g.n:
        raise GraphError("partition length does not match graph")
    lab = p.assignment
    src = g.row_index()
    crossing = lab[src] != lab[g.indices]
    return float(g.weights[crossing].sum() / 2.0)


# --------------------------------------------------------------- connectivity


def _bfs_reach(g: DoublyWeightedGraph, start: int, unseen: np.ndarray) -> list[int]:
    # unseen is mutated; edges of zero weight do not connect.
    stack = [start]
    unseen[start] = False
    out = [start]
    while stack:
        v = stack.pop()
        nbr, w = g.neighbors(v)
        for u in nbr[(w > 0) & unseen[nbr]]:
            u = int(u)
            if unseen[u]:
                unseen[u] = False
                stack.append(u)
                out.append(u)
    return out


def is_connected(g: DoublyWeightedGraph) -> bool:
    """True when every vertex is reachable from vertex 0 over positive-weight
    edges."""
    unseen = np.ones(g.n, dtype=bool)
    return len(_bfs_reach(g, 0, unseen)) == g.n


def connected_components(g: DoublyWeightedGraph) -> np.ndarray:
    """Component label per vertex, labels numbered by smallest member."""
    labels = np.full(g.n, -1, dtype=np.int64)
    unseen = np.ones(g.n, dtype=bool)
    comp = 0
    for v in range(g.n):
        if unseen[v]:
            labels[_bfs_reach(g, v, unseen)] = comp
            comp += 1
    return labels


def induced_subgraph(g: DoublyWeightedGraph, vertices) -> tuple[DoublyWeightedGraph, np.ndarray]:
    """Subgraph on the given vertices; returns (subgraph, original ids)."""
    keep = _as_index_array(g, vertices)
    if keep.size == 0:
        raise GraphError("empty vertex selection")
    keep = np.sort(keep)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    src = g.row_index()
    mask = (remap[src] >= 0) & (remap[g.indices] >= 0) & (src <= g.indices)
    edges = zip(remap[src[mask]], remap[g.indices[mask]], g.weights[mask])
    sub = DoublyWeightedGraph.from_edges(keep.size, edges, g.vertex_weights[keep])
    return sub, keep
