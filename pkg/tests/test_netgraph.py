"""Topology constructors, qualified cuts, and the two min-cut routes."""

import json

import numpy as np
import pytest

from pncbcast.netgraph import (
    Cut,
    Network,
    NoQualifiedCutError,
    from_edges,
    is_qualified,
    is_trivial,
    make_chord_ring_fig10,
    make_fig2,
    make_grid,
    make_line,
    make_ring,
    min_qualified_vertex_cut,
    min_qualified_vertex_cut_brute,
    vertex_cut_size,
)


def random_connected_network(rng, max_nodes=12):
    """Erdős–Rényi sample, retried until connected and non-trivial."""
    while True:
        n = int(rng.integers(4, max_nodes + 1))
        p = float(rng.uniform(0.25, 0.7))
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        try:
            net = from_edges(n, edges)
        except ValueError:
            continue  # disconnected draw; try again
        if not is_trivial(net):
            return net


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def test_line_shape():
    net = make_line(5)
    assert net.node_count == 5
    assert net.source == 0
    assert len(net.neighbors(0)) == 1
    assert len(net.neighbors(4)) == 1
    assert all(len(net.neighbors(i)) == 2 for i in (1, 2, 3))


def test_ring_every_node_degree_two():
    net = make_ring(6)
    assert net.node_count == 6
    assert all(len(net.neighbors(i)) == 2 for i in range(6))
    assert net.neighbors(0) == frozenset({1, 5})


def test_chord_ring_is_k6_minus_perfect_matching():
    net = make_chord_ring_fig10()
    assert net.node_count == 6
    assert all(len(net.neighbors(i)) == 4 for i in range(6))
    # the three missing pairs
    assert 3 not in net.neighbors(0)
    assert 4 not in net.neighbors(1)
    assert 5 not in net.neighbors(2)


def test_grid_shape_and_ids():
    net = make_grid(6, 5, (1, 1))
    assert net.node_count == 30
    assert net.source == 0
    coord_of = net.meta["coord_of"]
    assert coord_of[0] == (1, 1)
    id_of = {rc: i for i, rc in enumerate(coord_of)}
    # interior nodes have degree 4
    assert len(net.neighbors(id_of[(2, 2)])) == 4
    assert len(net.neighbors(id_of[(0, 0)])) == 2
    # grid adjacency: (1,1) touches its four orthogonal neighbors
    assert net.neighbors(0) == frozenset(
        {id_of[(0, 1)], id_of[(2, 1)], id_of[(1, 0)], id_of[(1, 2)]}
    )


def test_grid_rejects_bad_dims_and_source():
    with pytest.raises(ValueError):
        make_grid(1, 5, (0, 0))
    with pytest.raises(ValueError):
        make_grid(3, 3, (3, 0))


def test_fig2_adjacency():
    net = make_fig2()
    assert net.node_count == 6
    # node 3 is the relay adjacent exactly to the two source neighbors
    assert net.neighbors(3) == frozenset({1, 2})
    assert net.neighbors(0) == frozenset({1, 2})
    assert net.neighbors(4) == frozenset({1, 5})
    assert net.neighbors(5) == frozenset({2, 4})


def test_from_edges_validates():
    with pytest.raises(ValueError):
        from_edges(3, [(0, 0), (0, 1), (1, 2)])  # self-loop
    with pytest.raises(ValueError):
        from_edges(4, [(0, 1), (2, 3)])  # disconnected
    with pytest.raises(ValueError):
        from_edges(3, [(0, 1), (1, 3)])  # node out of range


# ---------------------------------------------------------------------------
# Trivial networks and cuts
# ---------------------------------------------------------------------------

def test_is_trivial():
    assert is_trivial(from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]))
    assert not is_trivial(make_line(3))
    star = from_edges(5, [(0, i) for i in range(1, 5)])
    assert is_trivial(star)


def test_vertex_cut_size_examples():
    line = make_line(4)
    # single far leaf: only its neighbor borders V2
    assert vertex_cut_size(line, Cut(frozenset({3}))) == 1
    ring = make_ring(6)
    assert vertex_cut_size(ring, Cut(frozenset({2, 3, 4}))) == 2
    for net in (line, ring, make_grid(3, 3, (0, 0))):
        # V2 = everything but X: V1={X} and X borders V2, so |V1'| = 1
        all_but_x = frozenset(range(1, net.node_count))
        assert vertex_cut_size(net, Cut(all_but_x)) == 1


def test_is_qualified():
    ring = make_ring(6)
    assert is_qualified(ring, Cut(frozenset({2, 3, 4})))
    assert not is_qualified(ring, Cut(frozenset({1, 2})))  # 1 neighbors X
    line = make_line(5)
    assert is_qualified(line, Cut(frozenset({4})))
    with pytest.raises(ValueError):
        is_qualified(line, Cut(frozenset()))  # empty V2
    with pytest.raises(ValueError):
        is_qualified(line, Cut(frozenset({0, 3})))  # contains X


# ---------------------------------------------------------------------------
# Minimum qualified vertex-cut: fixed values
# ---------------------------------------------------------------------------

def test_min_cut_line5():
    assert min_qualified_vertex_cut(make_line(5)) == 1
    assert min_qualified_vertex_cut_brute(make_line(5)) == 1


def test_min_cut_ring6():
    assert min_qualified_vertex_cut(make_ring(6)) == 2
    assert min_qualified_vertex_cut_brute(make_ring(6)) == 2


def test_min_cut_chord_ring():
    assert min_qualified_vertex_cut(make_chord_ring_fig10()) == 4
    assert min_qualified_vertex_cut_brute(make_chord_ring_fig10()) == 4


def test_min_cut_fig2():
    assert min_qualified_vertex_cut(make_fig2()) == 2
    assert min_qualified_vertex_cut_brute(make_fig2()) == 2


def test_min_cut_grids_spot():
    for M, N, pos in [(2, 2, (0, 0)), (3, 3, (1, 1)), (6, 5, (1, 1)), (4, 7, (3, 2))]:
        assert min_qualified_vertex_cut(make_grid(M, N, pos)) == 2, (M, N, pos)


def test_min_cut_small_grids_brute_agrees():
    for M, N in [(2, 2), (2, 3), (3, 3), (2, 6), (3, 4)]:
        for r in range(M):
            for c in range(N):
                net = make_grid(M, N, (r, c))
                assert min_qualified_vertex_cut_brute(net) == 2, (M, N, r, c)


def test_trivial_network_has_no_qualified_cut():
    k4 = from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    with pytest.raises(NoQualifiedCutError):
        min_qualified_vertex_cut(k4)
    with pytest.raises(NoQualifiedCutError):
        min_qualified_vertex_cut_brute(k4)


# ---------------------------------------------------------------------------
# Route equivalence and invariances
# ---------------------------------------------------------------------------

def test_brute_vs_maxflow_random_graphs():
    rng = np.random.default_rng(42)
    for _ in range(40):
        net = random_connected_network(rng)
        nb = min_qualified_vertex_cut_brute(net)
        nf = min_qualified_vertex_cut(net)
        assert nb == nf, net.to_json()
        assert nb >= 1


def test_min_cut_invariant_under_relabeling():
    rng = np.random.default_rng(7)
    net = make_grid(3, 4, (1, 2))
    n = net.node_count
    for _ in range(5):
        perm = [0] + list(rng.permutation(np.arange(1, n)))
        relabeled = from_edges(
            n, [(perm[u], perm[v]) for u, v in net.edges()]
        )
        assert min_qualified_vertex_cut(relabeled) == 2
        v2 = frozenset({perm[net.node_count - 1], perm[net.node_count - 2]})
        # vertex_cut_size of a relabeled cut matches the original's
        orig = vertex_cut_size(net, Cut(frozenset({n - 1, n - 2})))
        assert vertex_cut_size(relabeled, Cut(v2)) == orig


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_json_roundtrip():
    net = make_grid(3, 3, (0, 1))
    blob = net.to_json()
    parsed = json.loads(blob)
    assert parsed["source"] == 0
    assert parsed["nodes"] == 9
    back = Network.from_json(blob)
    assert back.node_count == net.node_count
    assert set(map(tuple, map(sorted, back.edges()))) == set(
        map(tuple, map(sorted, net.edges()))
    )
    assert back.meta.get("kind") == "grid"


def test_json_roundtrip_plain():
    net = make_ring(5)
    back = Network.from_json(net.to_json())
    assert back.neighbors(0) == net.neighbors(0)
