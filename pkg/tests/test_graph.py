import numpy as np
import pytest

from helpers import path_graph, random_connected_graph, random_surjective_partition
from wlpart.graph import (
    DoublyWeightedGraph,
    GraphError,
    Partition,
    block_boundary_weights,
    connected_components,
    cut,
    edge_cut,
    induced_subgraph,
    is_connected,
    mvol,
    ncut,
    vol,
    wcut,
)


def test_cut_path():
    g = path_graph()
    assert cut(g, [0], [1, 2]) == 1.0


def test_cut_triangle_weight_two():
    g = DoublyWeightedGraph.from_edges(3, [(0, 1, 2.0), (1, 2, 2.0), (0, 2, 2.0)])
    assert cut(g, [0], [1, 2]) == 4.0


def test_cut_overlap_rejected():
    g = path_graph()
    with pytest.raises(GraphError):
        cut(g, [0, 1], [1, 2])


def test_cut_symmetric_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(4, 30))
        g = random_connected_graph(rng, n, vw="random", loop_prob=0.2)
        verts = rng.permutation(n)
        split = int(rng.integers(1, n))
        a, b = verts[:split], verts[split:]
        assert cut(g, a, b) == pytest.approx(cut(g, b, a), rel=1e-12)


def test_mvol_vol_path():
    g = path_graph()
    assert mvol(g, [1, 2]) == 2.0
    assert vol(g, [1, 2]) == 3.0


def test_empty_set_rejected():
    g = path_graph()
    with pytest.raises(GraphError):
        mvol(g, [])
    with pytest.raises(GraphError):
        vol(g, [])


def test_wcut_ncut_path():
    g = path_graph()
    p = Partition([0, 1, 1])
    assert wcut(g, p) == pytest.approx(1.5, abs=1e-15)
    assert ncut(g, p) == pytest.approx(4.0 / 3.0, abs=1e-15)


def test_single_block_is_zero():
    g = path_graph()
    p = Partition([0, 0, 0], k=1)
    assert wcut(g, p) == 0.0
    assert ncut(g, p) == 0.0


def test_ncut_upper_bound_and_degree_identity():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(5, 40))
        k = int(rng.integers(2, min(6, n)))
        g = random_connected_graph(rng, n, vw="random", loop_prob=0.1)
        p = random_surjective_partition(rng, n, k)
        assert ncut(g, p) <= k + 1e-12
        gd = g.with_vertex_weights(g.degrees.copy())
        assert wcut(gd, p) == pytest.approx(ncut(g, p), rel=1e-12)


def test_wcut_scales_inversely_with_vertex_weights():
    rng = np.random.default_rng(13)
    for _ in range(10):
        n = int(rng.integers(5, 25))
        g = random_connected_graph(rng, n, vw="random")
        p = random_surjective_partition(rng, n, int(rng.integers(2, 5)))
        c = float(rng.uniform(0.5, 4.0))
        scaled = g.with_vertex_weights(g.vertex_weights * c)
        assert wcut(scaled, p) == pytest.approx(wcut(g, p) / c, rel=1e-12)


def test_wcut_matches_blockwise_cut():
    rng = np.random.default_rng(17)
    g = random_connected_graph(rng, 18, vw="random", loop_prob=0.3)
    p = random_surjective_partition(rng, 18, 3)
    expect = 0.0
    all_v = np.arange(18)
    for b in range(3):
        inside = np.flatnonzero(p.assignment == b)
        outside = np.setdiff1d(all_v, inside)
        expect += cut(g, inside, outside) / mvol(g, inside)
    assert wcut(g, p) == pytest.approx(expect, rel=1e-12)
    boundary = block_boundary_weights(g, p)
    assert boundary.shape == (3,)


def test_edge_cut_matches_pairwise_cut():
    rng = np.random.default_rng(19)
    g = random_connected_graph(rng, 14, loop_prob=0.2)
    p = random_surjective_partition(rng, 14, 2)
    a = np.flatnonzero(p.assignment == 0)
    b = np.flatnonzero(p.assignment == 1)
    assert edge_cut(g, p) == pytest.approx(cut(g, a, b), rel=1e-12)


def test_empty_block_rejected_by_metrics():
    g = path_graph()
    p = Partition([0, 0, 0], k=2, allow_empty=True)
    for metric in (wcut, ncut):
        with pytest.raises(GraphError):
            metric(g, p)


def test_partition_validation():
    with pytest.raises(GraphError):
        Partition([0, 2], k=2)  # id out of range
    with pytest.raises(GraphError):
        Partition([0, 0], k=2)  # empty block
    with pytest.raises(GraphError):
        Partition([-1, 0], k=2)
    p = Partition([1, 1, 0, 2])
    assert p.k == 3
    assert list(p.block_sizes()) == [1, 2, 1]
    assert np.array_equal(p.canonical(), [0, 0, 1, 2])
    assert p.same_blocks(Partition([0, 0, 1, 2]))


def test_degrees_include_self_loop():
    g = DoublyWeightedGraph.from_edges(1, [(0, 0, 5.0)], vertex_weights=[2.0])
    assert g.degrees[0] == 5.0
    assert g.num_edges == 1
    assert g.has_self_loops()


def test_self_loop_never_crosses():
    g = DoublyWeightedGraph.from_edges(2, [(0, 1, 1.0), (0, 0, 4.0)])
    p = Partition([0, 1])
    assert edge_cut(g, p) == 1.0
    assert wcut(g, p) == pytest.approx(1.0 / 1.0 + 1.0 / 1.0)


def test_connectivity():
    assert is_connected(path_graph())
    two_pieces = DoublyWeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    assert not is_connected(two_pieces)
    zero_bridge = DoublyWeightedGraph.from_edges(
        4, [(0, 1, 1.0), (2, 3, 1.0), (1, 2, 0.0)])
    assert not is_connected(zero_bridge)
    labels = connected_components(two_pieces)
    assert np.array_equal(labels, [0, 0, 1, 1])


def test_induced_subgraph():
    rng = np.random.default_rng(23)
    g = random_connected_graph(rng, 12, vw="random", loop_prob=0.2)
    sub, ids = induced_subgraph(g, [2, 3, 5, 7, 11])
    assert sub.n == 5
    assert np.array_equal(ids, [2, 3, 5, 7, 11])
    dense = g.dense_adjacency()[np.ix_(ids, ids)]
    assert np.allclose(sub.dense_adjacency(), dense)
    assert np.allclose(sub.vertex_weights, g.vertex_weights[ids])


def test_symmetry_validation():
    indptr = np.array([0, 1, 1])
    indices = np.array([1])
    weights = np.array([1.0])
    with pytest.raises(GraphError):
        DoublyWeightedGraph(indptr, indices, weights)


def test_duplicate_entry_validation():
    indptr = np.array([0, 2, 4])
    indices = np.array([1, 1, 0, 0])
    weights = np.array([1.0, 1.0, 1.0, 1.0])
    with pytest.raises(GraphError):
        DoublyWeightedGraph(indptr, indices, weights)


def test_nonpositive_vertex_weight_rejected():
    with pytest.raises(GraphError):
        path_graph().with_vertex_weights([1.0, 0.0, 1.0])


def test_from_dense_round_trip():
    rng = np.random.default_rng(29)
    g = random_connected_graph(rng, 9, vw="random", loop_prob=0.3)
    g2 = DoublyWeightedGraph.from_dense(g.dense_adjacency(), g.vertex_weights)
    assert np.allclose(g2.dense_adjacency(), g.dense_adjacency())
    assert np.allclose(g2.degrees, g.degrees)


def test_edge_weight_conservation_bookkeeping():
    rng = np.random.default_rng(31)
    g = random_connected_graph(rng, 10, loop_prob=0.4)
    # stored entries: off-diagonal twice, self-loop once
    loops = sum(w for i, j, w in g.edge_iter() if i == j)
    offdiag = sum(w for i, j, w in g.edge_iter() if i != j)
    assert g.weights.sum() == pytest.approx(2 * offdiag + loops, rel=1e-12)
    assert g.degrees.sum() == pytest.approx(g.weights.sum(), rel=1e-12)
