import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from oracles import bfs_diameter, edge_list
from lociso.families import highrise, named, singly_shuttered, doubly_shuttered
from lociso.graph import (
    INFINITE,
    Graph,
    GraphError,
    bipartition,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    degree_profile,
    delete_vertex,
    diameter,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    join,
    path_graph,
    strong_product,
    twin_pairs,
)
from lociso.iso import are_isomorphic


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.edge_count == 3
    assert g.min_degree == g.max_degree == 2


def test_build_edgeless():
    g = build_graph(4, [])
    assert g.edge_count == 0 and g.min_degree == g.max_degree == 0


def test_build_dedups():
    assert build_graph(5, [(0, 1), (0, 1), (1, 2)]).edge_count == 2
    assert build_graph(3, [(0, 1), (1, 0)]).edge_count == 1


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)], [(1, 1)]])
def test_build_rejects(edges):
    with pytest.raises(GraphError):
        build_graph(3, edges)


def test_induced_subgraph_of_universal_neighbourhood():
    g = named("k24_plus_k1")
    w = next(v for v in range(g.n) if g.degree(v) == 6)
    sub, keep = induced_subgraph(g, g.adj[w])
    assert len(keep) == 6
    assert are_isomorphic(sub, complete_bipartite(2, 4))


def test_induced_subgraph_c5_neighbourhood():
    g = cycle_graph(5)
    for v in range(5):
        sub, _ = induced_subgraph(g, g.adj[v])
        assert sub.n == 2 and sub.edge_count == 0


def test_induced_subgraph_identity():
    g = named("petersen")
    sub, keep = induced_subgraph(g, range(g.n))
    assert sub == g and keep == list(range(g.n))


def test_induced_subgraph_rejects_out_of_range():
    with pytest.raises(GraphError):
        induced_subgraph(complete_graph(3), [0, 5])


@pytest.mark.parametrize(
    "g, d",
    [
        (path_graph(4), 3),
        (complete_bipartite(2, 4), 2),
        (build_graph(4, [(0, 1), (2, 3)]), INFINITE),
        (empty_graph(0), INFINITE),
        (empty_graph(1), 0),
    ],
)
def test_diameter(g, d):
    assert diameter(g) == d


def test_join_examples():
    s5 = join(complete_graph(2), empty_graph(3))
    assert s5.n == 5 and s5.edge_count == 7
    assert sorted(s5.degrees()) == [2, 2, 2, 4, 4]
    d6 = join(complete_graph(2), empty_graph(4))
    assert d6.n == 6 and d6.edge_count == 9 and d6.max_degree == 5
    k = join(complete_graph(1), complete_bipartite(2, 4))
    assert k.n == 7 and k.max_degree == 6


def test_strong_product_examples():
    assert strong_product(path_graph(2), path_graph(2)) == complete_graph(4)
    g = strong_product(path_graph(2), path_graph(3))
    assert g.n == 6 and g.edge_count == 11
    assert sorted(g.degrees()) == [3, 3, 3, 3, 5, 5]
    c = cycle_graph(5)
    assert strong_product(complete_graph(1), c) == c


def test_strong_product_matches_networkx():
    g, h = path_graph(3), cycle_graph(4)
    ours = strong_product(g, h)
    ref = nx.strong_product(nx.path_graph(3), nx.cycle_graph(4))
    expected = {tuple(sorted((u * 4 + v, x * 4 + y))) for (u, v), (x, y) in ref.edges()}
    assert set(edge_list(ours)) == expected


def test_twins_complete():
    rep = twin_pairs(complete_graph(3))
    assert sorted(rep.true_twin_pairs) == [(0, 1), (0, 2), (1, 2)]
    assert rep.false_twin_pairs == []


def test_twins_k24_plus_k1():
    g = named("k24_plus_k1")
    rep = twin_pairs(g)
    assert rep.true_twin_pairs == []
    # the 2-side pair plus all pairs inside the 4-side
    assert len(rep.false_twin_pairs) == 1 + 6
    for u, v in rep.false_twin_pairs:
        assert g.degree(u) == g.degree(v) and not g.has_edge(u, v)


def test_twins_h7():
    # grid pairs (a_i, b_i) have ids (i-1, 3+i-1); the apex sits on pair 1
    rep = twin_pairs(highrise(7))
    got = {(u, v): rep.degree[(u, v)] for u, v in rep.true_twin_pairs}
    assert got == {(0, 3): 4, (1, 4): 5, (2, 5): 3}


def test_degree_profiles():
    assert sorted(degree_profile(singly_shuttered(8)).sequence) == [2, 2, 3, 3, 5, 5, 5, 5]
    assert sorted(degree_profile(doubly_shuttered(10)).sequence) == [2] * 4 + [5] * 6
    p = degree_profile(cycle_graph(7))
    assert set(p.sequence) == {2} and len(p.degree_two) == 7


def test_delete_vertex_relabels():
    g = path_graph(4)
    h, keep = delete_vertex(g, 1)
    assert keep == [0, 2, 3] and edge_list(h) == [(1, 2)]


def test_bipartition():
    u, v = bipartition(named("cube_q3"))
    assert len(u) == len(v) == 4
    assert bipartition(cycle_graph(5)) is None
    parts = bipartition(disjoint_union(complete_bipartite(3, 3), complete_bipartite(3, 3)))
    assert parts is not None and len(parts[0]) == 6


@given(graphs(max_n=8), graphs(max_n=6))
def test_join_degree_law(g, h):
    j = join(g, h)
    assert j.n == g.n + h.n
    assert j.edge_count == g.edge_count + h.edge_count + g.n * h.n
    for v in range(g.n):
        assert j.degree(v) == g.degree(v) + h.n


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_strong_product_degree_law(g, h):
    p = strong_product(g, h)
    for u in range(g.n):
        for v in range(h.n):
            assert p.degree(u * h.n + v) + 1 == (g.degree(u) + 1) * (h.degree(v) + 1)


@given(graphs())
def test_graph_invariants(g):
    assert sum(g.degrees()) == 2 * g.edge_count
    for u in range(g.n):
        assert not g.has_edge(u, u)
        for v in range(g.n):
            assert g.has_edge(u, v) == g.has_edge(v, u)
    sub, _ = induced_subgraph(g, range(g.n))
    assert sub == g


@given(graphs())
def test_twin_relations(g):
    rep = twin_pairs(g)
    for u, v in rep.true_twin_pairs:
        assert g.has_edge(u, v) and g.closed_mask(u) == g.closed_mask(v)
    for u, v in rep.false_twin_pairs:
        assert not g.has_edge(u, v) and g.adj[u] == g.adj[v]
    expected = sum(
        1 for u in range(g.n) for v in range(u + 1, g.n) if g.closed_mask(u) == g.closed_mask(v)
    )
    assert len(rep.true_twin_pairs) == expected


@given(graphs())
def test_diameter_against_bfs(g):
    assert diameter(g) == bfs_diameter(g, range(g.n))
    complete = g.n >= 2 and g.edge_count == g.n * (g.n - 1) // 2
    assert (diameter(g) == 1) == complete


def test_graph_rejects_bad_rows():
    with pytest.raises(GraphError):
        Graph(2, (0,))
