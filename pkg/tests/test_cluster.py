"""Initial clustering strategies and the shared k-means core."""

import numpy as np
import pytest

from wlpart.cluster import (
    REGION_BALANCE_EPS,
    STRATEGIES,
    kmeans,
    plain_spectral,
    random_clustering,
    region_growing,
    weighted_spectral,
)
from wlpart.graph import DoublyWeightedGraph, GraphError, Partition, ncut
from wlpart.oracle import brute_min_ncut

from helpers import path_graph, random_connected_graph


def two_cliques(size=5, bridge=1.0):
    edges = []
    for base in (0, size):
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((base + i, base + j, 1.0))
    edges.append((0, size, bridge))
    return DoublyWeightedGraph.from_edges(2 * size, edges)


def unit_path(n):
    return DoublyWeightedGraph.from_edges(
        n, [(i, i + 1, 1.0) for i in range(n - 1)])


def blocks_of(p):
    return {frozenset(map(int, b)) for b in p.blocks()}


# ---------------------------------------------------------------------------
# k-means


def test_kmeans_separates_obvious_clusters():
    pts = np.array([[0.0, 0.0], [0.0, 0.1], [10.0, 10.0]])
    # only three 2-clusterings exist; the best groups the two near points
    def cost(split):
        total = 0.0
        for idx in split:
            sub = pts[list(idx)]
            total += ((sub - sub.mean(axis=0)) ** 2).sum()
        return total

    options = [({0, 1}, {2}), ({0, 2}, {1}), ({1, 2}, {0})]
    best = min(cost(s) for s in options)
    for seed in range(5):
        res = kmeans(pts, 2, seed=seed)
        assert sorted(np.bincount(res.labels)) == [1, 2]
        assert res.labels[0] == res.labels[1] != res.labels[2]
        assert res.inertia == pytest.approx(best)
        assert res.inertia == pytest.approx(0.005)
        assert res.inertia_history[0] >= res.inertia - 1e-12


def test_kmeans_k_equals_n_is_exact():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(6, 3))
    res = kmeans(pts, 6, seed=1)
    assert sorted(res.labels) == list(range(6))
    assert res.inertia == pytest.approx(0.0, abs=1e-24)


def test_kmeans_single_cluster_centers_on_mean():
    pts = np.array([[0.0], [1.0], [5.0]])
    res = kmeans(pts, 1, seed=0)
    assert res.centers[0, 0] == pytest.approx(2.0)
    assert res.inertia == pytest.approx(14.0)  # 4 + 1 + 9


def test_kmeans_coincident_points_still_fill_every_cluster():
    pts = np.zeros((5, 2))
    res = kmeans(pts, 3, seed=0)
    assert set(res.labels) == {0, 1, 2}
    assert res.inertia == pytest.approx(0.0)


def test_kmeans_accepts_1d_points_and_is_deterministic():
    pts = np.array([0.0, 0.2, 7.0, 7.1])
    a = kmeans(pts, 2, seed=42)
    b = kmeans(pts, 2, seed=42)
    assert np.array_equal(a.labels, b.labels)
    assert a.labels[0] == a.labels[1] != a.labels[2]


def test_kmeans_k_out_of_range():
    pts = np.zeros((3, 2))
    with pytest.raises(GraphError):
        kmeans(pts, 0)
    with pytest.raises(GraphError):
        kmeans(pts, 4)


# ---------------------------------------------------------------------------
# random baseline


def test_random_covers_all_blocks():
    rng = np.random.default_rng(1)
    for trial in range(20):
        n = int(rng.integers(2, 30))
        g = random_connected_graph(rng, n)
        k = int(rng.integers(1, n + 1))
        p = random_clustering(g, k, seed=int(rng.integers(1 << 30)))
        assert p.k == k and (p.block_sizes() > 0).all()


def test_random_k_equals_n_gives_singletons():
    g = random_connected_graph(np.random.default_rng(2), 6)
    p = random_clustering(g, 6, seed=3)
    assert sorted(p.assignment) == list(range(6))


def test_random_is_roughly_uniform_and_seeded():
    g = random_connected_graph(np.random.default_rng(3), 3000, extra=0.0)
    p = random_clustering(g, 3, seed=7)
    assert (p.block_sizes() >= 800).all()
    q = random_clustering(g, 3, seed=7)
    assert np.array_equal(p.assignment, q.assignment)
    r = random_clustering(g, 3, seed=8)
    assert not np.array_equal(p.assignment, r.assignment)


# ---------------------------------------------------------------------------
# region growing


def test_region_growing_splits_path_in_half():
    g = unit_path(4)
    for seed in range(10):
        p = region_growing(g, 2, seed=seed)
        assert blocks_of(p) == {frozenset({0, 1}), frozenset({2, 3})}


def test_region_growing_keeps_heavy_edges_inside():
    g = DoublyWeightedGraph.from_edges(
        4, [(0, 1, 10.0), (1, 2, 1.0), (2, 3, 10.0)])
    for seed in range(10):
        p = region_growing(g, 2, seed=seed)
        assert blocks_of(p) == {frozenset({0, 1}), frozenset({2, 3})}


def test_region_growing_cycle_is_balanced():
    g = DoublyWeightedGraph.from_edges(
        12, [(i, (i + 1) % 12, 1.0) for i in range(12)])
    cap = (1 + REGION_BALANCE_EPS) * 12 / 3
    for seed in range(8):
        p = region_growing(g, 3, seed=seed)
        assert sorted(p.block_sizes()) == [4, 4, 4]
        assert p.block_sizes().max() <= cap


def test_region_growing_star_fallback_fills_both_blocks():
    # a 4-leaf star: once the hub's block caps out, the stranded leaves
    # must land in the least-loaded block even without a connection
    g = DoublyWeightedGraph.from_edges(5, [(0, i, 1.0) for i in range(1, 5)])
    for seed in range(10):
        p = region_growing(g, 2, seed=seed)
        sizes = sorted(p.block_sizes())
        assert sizes == [2, 3]


def test_region_growing_extremes_and_determinism():
    rng = np.random.default_rng(5)
    g = random_connected_graph(rng, 9, vw="random")
    assert region_growing(g, 1, seed=0).k == 1
    p = region_growing(g, 9, seed=0)
    assert sorted(p.assignment) == list(range(9))
    a = region_growing(g, 3, seed=11)
    b = region_growing(g, 3, seed=11)
    assert np.array_equal(a.assignment, b.assignment)


def test_region_growing_cap_overrides_greedy_growth():
    # unchecked heaviest-connection growth would drag vertex 3 into the
    # left block ({0..4} vs {5}); the cap of 1.05*6/2 = 3.15 stops the
    # block at three vertices, cutting a heavy edge instead
    g = DoublyWeightedGraph.from_edges(
        6, [(0, 1, 1.0), (1, 2, 10.0), (2, 3, 10.0), (3, 4, 10.0),
            (4, 5, 1.0)])
    cap = (1 + REGION_BALANCE_EPS) * 6 / 2
    for seed in range(8):
        p = region_growing(g, 2, seed=seed)
        assert blocks_of(p) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
        sizes = np.bincount(p.assignment, weights=g.vertex_weights)
        assert sizes.max() <= cap


# ---------------------------------------------------------------------------
# spectral strategies


def test_weighted_spectral_halves_a_path():
    g = unit_path(6)
    for seed in range(3):
        p = weighted_spectral(g, 2, seed=seed)
        assert blocks_of(p) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}


def test_plain_spectral_recovers_planted_cliques():
    g = two_cliques(5)
    planted = Partition(np.array([0] * 5 + [1] * 5), 2)
    oracle = brute_min_ncut(g, 2)
    assert oracle.value == pytest.approx(2 / 21)
    for seed in range(4):
        p = plain_spectral(g, 2, seed=seed)
        assert p.same_blocks(planted)
        assert ncut(g, p) == pytest.approx(oracle.value, rel=1e-12)


def test_weighted_equals_plain_when_weights_are_degrees():
    rng = np.random.default_rng(17)
    for trial in range(20):
        base = random_connected_graph(rng, int(rng.integers(6, 40)),
                                      loop_prob=0.1, vw="random")
        g = base.with_vertex_weights(base.degrees)
        k = int(rng.integers(2, 5))
        seed = int(rng.integers(1 << 30))
        a = weighted_spectral(g, k, seed=seed)
        b = plain_spectral(g, k, seed=seed)
        assert np.array_equal(a.assignment, b.assignment)


def test_weighted_spectral_beats_random_on_planted_structure():
    g = two_cliques(12, bridge=1.0)
    ws = ncut(g, weighted_spectral(g, 2, seed=0))
    rand = np.mean([ncut(g, random_clustering(g, 2, seed=s))
                    for s in range(10)])
    assert ws <= rand
    assert ws == pytest.approx(2 / 133)  # vol(clique) = 11*12 + 1


def test_strategy_table_and_common_contract():
    assert set(STRATEGIES) == {"random", "region-growing", "spectral",
                               "weighted-spectral"}
    rng = np.random.default_rng(23)
    g = random_connected_graph(rng, 15, vw="random", loop_prob=0.2)
    for name, strategy in STRATEGIES.items():
        p = strategy(g, 3, 5)
        assert isinstance(p, Partition)
        assert p.k == 3 and (p.block_sizes() > 0).all()
        q = strategy(g, 3, 5)
        assert np.array_equal(p.assignment, q.assignment), name


def test_spectral_k_bounds():
    g = unit_path(4)
    assert weighted_spectral(g, 1, seed=0).k == 1
    with pytest.raises(GraphError):
        weighted_spectral(g, 5, seed=0)
    with pytest.raises(GraphError):
        plain_spectral(g, 0, seed=0)
