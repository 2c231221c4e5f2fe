"""Tests for rank3.graphs: SRG analytics against hand-checked graphs and
graph6 round-trips cross-checked against networkx."""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rank3.graphs import (
    Degenerate,
    DenseGraph,
    NotStronglyRegular,
    SameVertex,
    common_neighbours,
    complement,
    from_adjacency_text,
    from_graph6,
    srg_params,
    to_adjacency_text,
    to_graph6,
)


def cycle(n: int) -> DenseGraph:
    return DenseGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> DenseGraph:
    g = nx.petersen_graph()
    return DenseGraph.from_edges(10, g.edges())


def test_pentagon_is_srg_5_2_0_1():
    p = srg_params(cycle(5))
    assert (p.n, p.k, p.lam, p.mu) == (5, 2, 0, 1)
    assert p.feasible()


def test_petersen_is_srg_10_3_0_1():
    p = srg_params(petersen())
    assert (p.n, p.k, p.lam, p.mu) == (10, 3, 0, 1)


def test_hexagon_rejected_with_witness():
    with pytest.raises(NotStronglyRegular) as e:
        srg_params(cycle(6))
    u, v, kind, observed, expected = e.value.witness
    # distance-2 and distance-3 nonadjacent pairs disagree (1 vs 0 common nbrs)
    assert kind == "nonadjacent"
    assert {observed, expected} == {0, 1}
    assert not cycle(6).has_edge(u, v)


def test_irregular_graph_rejected():
    g = DenseGraph.from_edges(4, [(0, 1), (1, 2)])
    with pytest.raises(NotStronglyRegular) as e:
        srg_params(g)
    assert e.value.witness[2] == "degree"


def test_complete_and_empty_are_degenerate():
    with pytest.raises(Degenerate):
        srg_params(DenseGraph(np.zeros((5, 5), dtype=bool)))
    complete = ~np.eye(5, dtype=bool)
    with pytest.raises(Degenerate):
        srg_params(DenseGraph(complete))


def test_common_neighbours_pentagon():
    g = cycle(5)
    assert common_neighbours(g, 0, 1) == 0  # adjacent: lambda = 0
    assert common_neighbours(g, 0, 2) == 1  # nonadjacent: mu = 1
    with pytest.raises(SameVertex):
        common_neighbours(g, 3, 3)


def test_common_neighbours_k4():
    k4 = DenseGraph(~np.eye(4, dtype=bool))
    assert common_neighbours(k4, 0, 1) == 2


def test_complement_involution_and_params():
    g = petersen()
    assert complement(complement(g)) == g
    p = srg_params(g)
    pc = srg_params(complement(g))
    assert pc == p.complement_params()
    assert pc.feasible()


def test_complement_of_empty_is_complete():
    empty = DenseGraph(np.zeros((4, 4), dtype=bool))
    comp = complement(empty)
    assert comp.edge_count() == 6


def test_adjacency_validation():
    with pytest.raises(ValueError):
        DenseGraph(np.eye(3, dtype=bool))  # loops
    bad = np.zeros((3, 3), dtype=bool)
    bad[0, 1] = True  # not symmetric
    with pytest.raises(ValueError):
        DenseGraph(bad)


def test_graph6_against_networkx_petersen():
    g = petersen()
    ours = to_graph6(g)
    theirs = nx.to_graph6_bytes(nx.petersen_graph(), header=False).decode().strip()
    assert ours == theirs
    assert from_graph6(theirs) == g


def test_graph6_large_n_header():
    # n = 63 needs the 0x7E + 3-char size field
    g = DenseGraph.from_edges(63, [(0, 1), (10, 62)])
    s = to_graph6(g)
    assert s[0] == chr(126)
    assert from_graph6(s) == g
    theirs = nx.to_graph6_bytes(
        nx.from_numpy_array(g.adj.astype(int)), header=False
    ).decode().strip()
    assert s == theirs


def test_adjacency_text_round_trip():
    g = petersen()
    assert from_adjacency_text(to_adjacency_text(g)) == g


@settings(max_examples=60)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_graph6_round_trip_random(n, seed):
    rng = np.random.default_rng(seed)
    adj = rng.random((n, n)) < 0.4
    adj = np.triu(adj, 1)
    adj = adj | adj.T
    g = DenseGraph(adj)
    assert from_graph6(to_graph6(g)) == g
    gx = nx.from_graph6_bytes(to_graph6(g).encode())
    assert nx.number_of_nodes(gx) == n
    assert nx.number_of_edges(gx) == g.edge_count()


@settings(max_examples=40)
@given(st.integers(3, 30), st.integers(0, 2**32 - 1))
def test_complement_involution_random(n, seed):
    rng = np.random.default_rng(seed)
    adj = rng.random((n, n)) < 0.5
    adj = np.triu(adj, 1)
    g = DenseGraph(adj | adj.T)
    assert complement(complement(g)) == g
    # degree sum check: deg_G(v) + deg_co(v) = n - 1
    assert (g.degrees() + complement(g).degrees() == n - 1).all()


def test_common_neighbours_matches_naive_counting():
    rng = np.random.default_rng(7)
    adj = rng.random((20, 20)) < 0.3
    adj = np.triu(adj, 1)
    g = DenseGraph(adj | adj.T)
    for u in range(0, 20, 3):
        for v in range(1, 20, 4):
            if u == v:
                continue
            naive = int(np.sum(g.adj[u] & g.adj[v]))
            assert common_neighbours(g, u, v) == naive
