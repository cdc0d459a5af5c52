import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgeloc.exceptions import DisconnectedGraphError, GraphFormatError, InvalidFamilyError, UnsupportedSizeError
from edgeloc.graph import (
    INF,
    FamilySpec,
    Graph,
    all_pairs_distances,
    check_graph,
    complete_graph,
    connected_graphs_by_order,
    connected_graphs_by_size,
    cycle_graph,
    degree_census,
    diameter,
    encode_graph6,
    family_graph,
    format_edge_list,
    is_connected,
    is_matching,
    join_graphs,
    matching_graph,
    maximum_matching,
    parse_edge_list,
    parse_graph6,
    path_graph,
)


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


# -- representation ---------------------------------------------------------


def test_edges_normalized_and_indexed():
    g = Graph(3, [(2, 1), (0, 1)])
    assert g.edges == ((1, 2), (0, 1))
    assert g.edge_id(2, 1) == 0 and g.edge_id(1, 0) == 1
    assert g.adj[1] == (0, 2)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Graph(3, edges)


def test_check_graph_accepts_networkx_and_rejects_disconnected():
    assert check_graph(nx.path_graph(4)) == path_graph(4)
    with pytest.raises(DisconnectedGraphError):
        check_graph(Graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        check_graph(path_graph(2))


# -- graph6 -------------------------------------------------------------------


def test_graph6_examples():
    assert encode_graph6(complete_graph(3)) == "Bw"
    assert encode_graph6(path_graph(2)) == "A_"
    assert parse_graph6("Bw") == complete_graph(3)


@given(graphs())
@settings(max_examples=200, deadline=None)
def test_graph6_round_trip(g):
    assert parse_graph6(encode_graph6(g)).edge_set() == g.edge_set()


def test_graph6_agrees_with_networkx():
    rng = random.Random(3)
    for _ in range(50):
        h = nx.gnp_random_graph(rng.randint(2, 20), 0.4, seed=rng.randint(0, 10**6))
        ours = Graph(h.number_of_nodes(), h.edges())
        assert encode_graph6(ours) == nx.to_graph6_bytes(h, header=False).decode().strip()


@pytest.mark.parametrize("word,offset", [("B w", 1), ("~??", 0), ("D?", 2), ("Bww", 2), ("A`", 1)])
def test_graph6_errors_carry_offsets(word, offset):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph6(word)
    assert exc.value.offset == offset


def test_graph6_size_limit():
    with pytest.raises(UnsupportedSizeError):
        encode_graph6(Graph(63))


# -- edge lists ---------------------------------------------------------------


def test_edge_list_examples():
    assert parse_edge_list("3 2\n0 1\n1 2") == path_graph(3)
    c4 = parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0")
    assert c4 == cycle_graph(4)
    assert c4.edges[3] == (0, 3)  # file order kept


@pytest.mark.parametrize("text,line", [
    ("2 1\n0 0", 2),
    ("3 2\n0 1\n1 0", 3),
    ("3 1\n0 5", 2),
    ("3 2\n0 1", 1),
    ("x y\n", 1),
])
def test_edge_list_errors(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_edge_list(text)
    assert exc.value.offset == line


def test_edge_list_round_trip():
    g = family_graph("book:3")
    assert parse_edge_list(format_edge_list(g)).edges == g.edges


# -- distances ----------------------------------------------------------------


def test_distance_examples():
    assert all_pairs_distances(path_graph(4))[0][3] == 3
    assert all_pairs_distances(cycle_graph(6))[0][3] == 3
    d = all_pairs_distances(complete_graph(5))
    assert all(d[u][v] == (0 if u == v else 1) for u in range(5) for v in range(5))
    assert all_pairs_distances(Graph(2))[0][1] == INF


@given(graphs(max_n=9))
@settings(max_examples=100, deadline=None)
def test_distance_table_metric(g):
    d = g.distances
    for u in range(g.n):
        assert d[u][u] == 0
        for v in range(g.n):
            assert d[u][v] == d[v][u]
            for w in range(g.n):
                assert d[u][w] <= d[u][v] + d[v][w]


def test_diameter_examples():
    assert diameter(path_graph(8)) == 7
    assert diameter(cycle_graph(9)) == 4
    assert diameter(complete_graph(7)) == 1
    with pytest.raises(DisconnectedGraphError):
        diameter(Graph(2))


def test_degree_census_examples():
    assert degree_census(path_graph(4)) == {1: 2, 2: 2}
    assert degree_census(family_graph("wheel:4")) == {3: 4, 4: 1}
    assert degree_census(complete_graph(5)) == {4: 5}


def test_is_connected_examples():
    assert is_connected(cycle_graph(4))
    assert not is_connected(Graph(2))
    assert is_connected(Graph(1))


# -- matchings ----------------------------------------------------------------


def _exhaustive_matching_size(g):
    best = 0
    for size in range(g.n // 2, 0, -1):
        for combo in itertools.combinations(range(g.m), size):
            if is_matching(g, combo):
                return size
    return best


def test_matching_examples():
    assert len(maximum_matching(path_graph(4))) == 2
    assert len(maximum_matching(cycle_graph(5))) == 2
    assert len(maximum_matching(complete_graph(4))) == 2


def test_matching_agrees_with_exhaustive_oracle():
    rng = random.Random(12)
    for _ in range(150):
        n = rng.randint(2, 12)
        h = nx.gnp_random_graph(n, rng.choice([0.15, 0.25, 0.4]), seed=rng.randint(0, 10**6))
        g = Graph(n, h.edges())
        mt = maximum_matching(g)
        assert is_matching(g, mt)
        if g.m <= 18:
            assert len(mt) == _exhaustive_matching_size(g)
        else:
            assert len(mt) == len(nx.max_weight_matching(h, maxcardinality=True))


# -- families and joins -------------------------------------------------------


def test_family_counts():
    assert (family_graph("wheel:4").n, family_graph("wheel:4").m) == (5, 8)
    assert (family_graph("book:3").n, family_graph("book:3").m) == (8, 16)
    assert (family_graph("monotonicity_G").n, family_graph("monotonicity_G").m) == (16, 15)
    assert (family_graph("monotonicity_H").n, family_graph("monotonicity_H").m) == (16, 16)
    for n in range(3, 13):
        assert family_graph(f"wheel:{n}").m == 2 * n
        assert family_graph(f"fan:{n}").m == 2 * n - 1
        assert family_graph(f"windmill:{n}").m == 3 * n
        assert family_graph(f"book:{n}").m == 1 + 4 * n + n


def test_monotonicity_pair_nested():
    g, h = family_graph("monotonicity_G"), family_graph("monotonicity_H")
    assert g.edge_set() < h.edge_set()
    assert h.edge_set() - g.edge_set() == {(0, 7)}


def test_join_examples():
    for n in range(3, 9):
        assert join_graphs(Graph(1), cycle_graph(n)) == family_graph(f"wheel:{n}")
    assert join_graphs(Graph(1), path_graph(3)) == family_graph("fan:3")
    b2 = join_graphs(Graph(2, [(0, 1)]), matching_graph(2))
    assert (b2.n, b2.m) == (6, 11)


def test_family_spec_parsing():
    spec = FamilySpec.parse("double_star:3,2")
    assert spec.params == (3, 2) and str(spec) == "double_star:3,2"
    for bad in ["nope:3", "wheel", "wheel:2", "double_star:1,2", "wheel:x"]:
        with pytest.raises(InvalidFamilyError):
            FamilySpec.parse(bad)


def test_spectrum_tree_shape():
    t = family_graph("spectrum_tree:7,4")
    assert t.m == 7 and t.n == 8 and is_connected(t)
    assert t.degree(1) == 4
    assert family_graph("spectrum_tree:6,3") == path_graph(7)


# -- corpora ------------------------------------------------------------------


def test_corpus_counts_match_known_sequences():
    # connected graphs by number of edges (OEIS A002905) and by order (A001349)
    by_size = connected_graphs_by_size(7)
    counts = [sum(1 for g in by_size if g.m == m) for m in range(1, 8)]
    assert counts == [1, 1, 3, 5, 12, 30, 79]
    by_order = connected_graphs_by_order(7, 1)
    assert [sum(1 for g in by_order if g.n == n) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]
