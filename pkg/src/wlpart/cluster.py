"""Initial clustering strategies for doubly-weighted graphs.

All strategies share one signature: ``strategy(g, k, seed) -> Partition`` with
every block nonempty.  They are meant to run on small (coarsened) graphs:

* ``random_clustering`` — uniform labels with empty-block repair; the
  baseline any informed method has to beat.
* ``region_growing`` — grows blocks outward from hop-spread seed vertices,
  always absorbing the vertex with the heaviest connection to a block that
  still has room under a balance cap.
* ``weighted_spectral`` — k-means on the rows of the k smallest eigenvectors
  of the vertex-weight-normalized Laplacian.  The rows are used as-is.
* ``plain_spectral`` — the same pipeline run after substituting the degrees
  for the vertex weights, i.e. classic normalized spectral clustering.  It is
  literally the weighted path on a reweighted graph, so whenever M = D the
  two strategies agree bit for bit.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np

from .eigen import smallest_k
from .graph import DoublyWeightedGraph, GraphError, Partition
from .laplacian import WeightedLaplacian

__all__ = [
    "KMeansResult",
    "kmeans",
    "random_clustering",
    "region_growing",
    "weighted_spectral",
    "plain_spectral",
    "STRATEGIES",
    "REGION_BALANCE_EPS",
]

# a growing block may exceed its even share of mvol by this fraction
REGION_BALANCE_EPS = 0.05


def _check_k(g: DoublyWeightedGraph, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= g.n:
        raise GraphError(f"k must be an integer in 1..{g.n}, got {k!r}")


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


# ---------------------------------------------------------------------------
# k-means


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    inertia: float
    inertia_history: tuple  # per-iteration inertia of the winning restart


def _kmeanspp_init(pts, k, rng):
    n = pts.shape[0]
    centers = np.empty((k, pts.shape[1]))
    centers[0] = pts[int(rng.integers(n))]
    d2 = ((pts - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:  # all remaining points coincide with a center
            idx = int(rng.integers(n))
        centers[j] = pts[idx]
        d2 = np.minimum(d2, ((pts - centers[j]) ** 2).sum(axis=1))
    return centers


def _lloyd(pts, k, rng, max_iter):
    n = pts.shape[0]
    centers = _kmeanspp_init(pts, k, rng)
    labels = None
    history = []
    for _ in range(max_iter):
        d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = d2.argmin(axis=1)
        costs = d2[np.arange(n), new_labels]
        counts = np.bincount(new_labels, minlength=k)
        for c in np.flatnonzero(counts == 0):
            # hand the empty cluster the point that currently costs the most
            far = int(costs.argmax())
            new_labels[far] = c
            costs[far] = -np.inf
        history.append(float(((pts - centers[new_labels]) ** 2).sum()))
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = labels == c
            if members.any():
                centers[c] = pts[members].mean(axis=0)
    counts = np.bincount(labels, minlength=k)
    for c in np.flatnonzero(counts == 0):  # pathological: coincident points
        donor = int(counts.argmax())
        victim = int(np.flatnonzero(labels == donor)[0])
        labels[victim] = c
        counts[donor] -= 1
        counts[c] += 1
    for c in range(k):
        centers[c] = pts[labels == c].mean(axis=0)
    inertia = float(((pts - centers[labels]) ** 2).sum())
    return labels, centers, inertia, tuple(history)


def kmeans(points, k: int, seed=0, restarts: int = 10,
           max_iter: int = 300) -> KMeansResult:
    """Seeded k-means (greedy init by squared-distance sampling, Lloyd
    iterations, empty-cluster repair), best of ``restarts`` runs."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if not 1 <= k <= n:
        raise GraphError(f"k must be in 1..{n}, got {k!r}")
    best = None
    for child in _seed_sequence(seed).spawn(restarts):
        run = _lloyd(pts, k, np.random.default_rng(child), max_iter)
        if best is None or run[2] < best[2]:
            best = run
    labels, centers, inertia, history = best
    return KMeansResult(labels.astype(np.int64), centers, inertia, history)


# ---------------------------------------------------------------------------
# strategies


def random_clustering(g: DoublyWeightedGraph, k: int, seed=0) -> Partition:
    """Uniform random labels; empty blocks steal a vertex from the largest."""
    _check_k(g, k)
    rng = np.random.default_rng(seed)
    assignment = rng.integers(0, k, size=g.n).astype(np.int64)
    counts = np.bincount(assignment, minlength=k)
    while (counts == 0).any():
        empty = int(np.flatnonzero(counts == 0)[0])
        donor = int(counts.argmax())
        victim = int(rng.choice(np.flatnonzero(assignment == donor)))
        assignment[victim] = empty
        counts[donor] -= 1
        counts[empty] += 1
    return Partition(assignment, k)


def _hop_distances(g: DoublyWeightedGraph, start: int) -> np.ndarray:
    """Unweighted hop distance over positive-weight edges; unreachable = n."""
    dist = np.full(g.n, g.n, dtype=np.int64)
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        nbr, w = g.neighbors(v)
        for u in nbr[(w > 0) & (nbr != v)]:
            if dist[u] == g.n:
                dist[u] = dist[v] + 1
                queue.append(int(u))
    return dist


def _spread_seeds(g: DoublyWeightedGraph, k: int, rng) -> list[int]:
    """Hop-spread seed vertices: start from the far end of a probe sweep,
    then repeatedly take the vertex farthest from all chosen seeds."""
    probe = int(rng.integers(g.n))
    first = int(_hop_distances(g, probe).argmax())  # argmax → lowest id tie
    seeds = [first]
    min_dist = _hop_distances(g, first)
    while len(seeds) < k:
        nxt = int(min_dist.argmax())
        seeds.append(nxt)
        min_dist = np.minimum(min_dist, _hop_distances(g, nxt))
    return seeds


def region_growing(g: DoublyWeightedGraph, k: int, seed=0,
                   epsilon: float = REGION_BALANCE_EPS) -> Partition:
    """Grow blocks from spread-out seeds by heaviest connection.

    The next absorption is always the unassigned vertex with the largest
    total edge weight into some block (ties: lowest vertex id, then lowest
    block id), provided the block stays under ``(1+epsilon) * mvol(V)/k``.
    Vertices nothing can absorb — capped out or unreachable — go to the
    least-loaded block at the end.
    """
    _check_k(g, k)
    n = g.n
    if k == 1:
        return Partition(np.zeros(n, dtype=np.int64), 1)
    rng = np.random.default_rng(seed)
    m = g.vertex_weights
    cap = (1.0 + epsilon) * m.sum() / k
    assignment = np.full(n, -1, dtype=np.int64)
    load = np.zeros(k)
    conn: list[dict] = [dict() for _ in range(n)]
    heap: list = []

    def absorb(v: int, b: int) -> None:
        assignment[v] = b
        load[b] += m[v]
        conn[v].clear()
        nbr, w = g.neighbors(v)
        for u, wv in zip(nbr, w):
            if u != v and wv > 0 and assignment[u] == -1:
                c = conn[u].get(b, 0.0) + wv
                conn[u][b] = c
                heapq.heappush(heap, (-c, int(u), b))

    for b, s in enumerate(_spread_seeds(g, k, rng)):
        absorb(s, b)
    remaining = n - k
    while heap and remaining:
        negc, v, b = heapq.heappop(heap)
        if assignment[v] != -1 or conn[v].get(b) != -negc:
            continue  # stale entry
        if load[b] + m[v] > cap:
            del conn[v][b]  # loads only grow: this block is closed to v
            continue
        absorb(v, b)
        remaining -= 1
    for v in np.flatnonzero(assignment == -1):
        absorb(int(v), int(load.argmin()))
    return Partition(assignment, k)


def weighted_spectral(g: DoublyWeightedGraph, k: int, seed=0) -> Partition:
    """k-means over the k smallest eigenvectors of the vertex-weight-
    normalized Laplacian."""
    _check_k(g, k)
    if k == 1:
        return Partition(np.zeros(g.n, dtype=np.int64), 1)
    eig_seed, km_seed = _seed_sequence(seed).spawn(2)
    emb = smallest_k(WeightedLaplacian(g), k, seed=eig_seed)
    result = kmeans(emb.vectors, k, seed=km_seed)
    return Partition(result.labels, k)


def plain_spectral(g: DoublyWeightedGraph, k: int, seed=0) -> Partition:
    """Normalized spectral clustering: the weighted pipeline with the
    degrees substituted for the vertex weights."""
    _check_k(g, k)
    return weighted_spectral(g.with_vertex_weights(g.degrees), k, seed)


STRATEGIES = {
    "random": random_clustering,
    "region-growing": region_growing,
    "spectral": plain_spectral,
    "weighted-spectral": weighted_spectral,
}
