"""Shared generators for randomized tests (seeded, no global state)."""

from __future__ import annotations

import numpy as np

from wlpart.graph import DoublyWeightedGraph, Partition


def random_connected_graph(rng, n, extra=0.15, w_low=0.5, w_high=3.0,
                           vw="unit", loop_prob=0.0, integral=False):
    """Random connected graph: a random spanning tree plus extra edges.

    vw: "unit" (M = I), "random" (uniform positive), or "degrees" (M = D).
    loop_prob: probability of a self-loop per vertex.
    integral: draw integer weights in [1, 9] (METIS-friendly).
    """
    def draw(size=None):
        if integral:
            return rng.integers(1, 10, size=size).astype(float)
        return rng.uniform(w_low, w_high, size=size)

    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = float(draw())
    if n > 2 and extra > 0:
        iu, ju = np.triu_indices(n, k=1)
        pick = rng.random(iu.size) < extra
        for i, j in zip(iu[pick], ju[pick]):
            edges.setdefault((int(i), int(j)), float(draw()))
    if loop_prob > 0:
        for v in range(n):
            if rng.random() < loop_prob:
                edges[(v, v)] = float(draw())
    elist = [(i, j, w) for (i, j), w in edges.items()]
    g = DoublyWeightedGraph.from_edges(n, elist)
    if vw == "random":
        g = g.with_vertex_weights(rng.uniform(0.5, 2.5, n))
    elif vw == "degrees":
        g = g.with_vertex_weights(g.degrees.copy())
    elif vw != "unit":
        raise ValueError(vw)
    return g


def random_surjective_partition(rng, n, k):
    """Random assignment with every block nonempty."""
    labels = rng.integers(0, k, n)
    seeds = rng.permutation(n)[:k]
    labels[seeds] = np.arange(k)
    return Partition(labels, k)


def path_graph(weights=(1.0, 1.0)):
    """Path 0-1-...-len(weights) with the given consecutive edge weights."""
    return DoublyWeightedGraph.from_edges(
        len(weights) + 1, [(i, i + 1, w) for i, w in enumerate(weights)])
