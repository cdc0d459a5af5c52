import random

import pytest

from edgeloc.coloring import color_code, verify_elc
from edgeloc.constructions import (
    CertifiedColoring,
    Theorem,
    bipartite_matrix,
    certify,
    color_tree_leaves,
    color_tree_support,
    color_via_disjoint_matchings,
    color_via_matching,
    complete_matrix,
    complete_minus_classes,
    construct_coloring,
    support_bound,
)
from edgeloc.exceptions import ConstructionError, HypothesisError, InvalidFamilyError
from edgeloc.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    family_graph,
    path_graph,
    perfect_binary_tree,
    random_tree,
)


def _k(spec):
    cert = construct_coloring(spec)
    assert isinstance(cert, CertifiedColoring)
    assert verify_elc(cert.graph, cert.coloring).passed
    assert cert.coloring.k == cert.claimed_k
    return cert.claimed_k


# -- colour counts for every family over its range ----------------------------


@pytest.mark.parametrize("n", range(3, 31))
def test_paths_and_cycles(n):
    assert _k(f"path:{n}") == (2 if n == 3 else 3)
    assert _k(f"cycle:{n}") == (3 if n == 3 else 4)


@pytest.mark.parametrize("n", range(3, 17))
def test_complete(n):
    assert _k(f"complete:{n}") == (n if n % 2 else n + 1)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 13) for m in range(2, 13)])
def test_complete_bipartite(n, m):
    assert _k(f"complete_bipartite:{n},{m}") == (n + 2 if n == m else max(n, m) + 1)


@pytest.mark.parametrize("m", range(2, 13))
def test_stars(m):
    assert _k(f"star:{m}") == m
    assert _k(f"complete_bipartite:1,{m}") == m


@pytest.mark.parametrize("n", range(2, 13))
def test_join_families(n):
    if n >= 4:
        assert _k(f"wheel:{n}") == n
    assert _k(f"fan:{n}") == {2: 3, 3: 4}.get(n, n)
    assert _k(f"windmill:{n}") == (5 if n == 2 else 2 * n)
    assert _k(f"book:{n}") == (6 if n == 2 else 2 * n + 2)


@pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 9) for q in range(1, p + 1)])
def test_double_stars(p, q):
    assert _k(f"double_star:{p},{q}") == (p + 1 if p > q else p + 2)


@pytest.mark.parametrize("m,k", [(m, k) for m in range(3, 11) for k in range(3, m + 1)])
def test_spectrum_trees(m, k):
    assert _k(f"spectrum_tree:{m},{k}") == k
    assert family_graph(f"spectrum_tree:{m},{k}").m == m


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_minus_matching_odd(n):
    for k in range(1, n + 1):
        assert _k(f"complete_minus_matching:{2 * n + 1},{k}") == (2 * n if k == n else 2 * n + 1)


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_minus_matching_even(n):
    for k in (n - 1, n):
        if k >= 1:
            assert _k(f"complete_minus_matching:{2 * n},{k}") == 2 * n
    if n >= 3:
        with pytest.raises(HypothesisError):
            construct_coloring(f"complete_minus_matching:{2 * n},1")


@pytest.mark.parametrize("order,m", [(o, m) for o in (4, 6, 8, 10) for m in range(1, o // 2)])
def test_complete_minus_classes(order, m):
    cert = complete_minus_classes(order, m)
    assert cert.claimed_k == order - m
    assert cert.graph.m == order * (order - 1) // 2 - order // 2 - m * (order // 2 - 1)


def test_complete_minus_classes_hypotheses():
    with pytest.raises(HypothesisError):
        complete_minus_classes(7, 1)
    with pytest.raises(HypothesisError):
        complete_minus_classes(8, 4)


# -- printed matrices and code patterns ------------------------------------------


def test_k8_matrix_row1_and_v3():
    a = complete_matrix(8)
    assert [a[(1, j)] for j in range(2, 9)] == [1, 3, 2, 4, 5, 6, 7]
    at3 = {a[tuple(sorted((3, j)))] for j in range(1, 9) if j != 3}
    assert at3 == {3, 4, 5, 6, 7, 8, 9}


def test_k10_v4_and_k11_entries():
    a = complete_matrix(10)
    assert [a[tuple(sorted((4, j)))] for j in range(1, 11) if j != 4] == [3, 4, 5, 7, 8, 9, 10, 11, 1]
    b = complete_matrix(11)
    assert b[(1, 2)] == 1 and b[(10, 11)] == 8


def test_construct_uses_matrix():
    cert = construct_coloring("complete:8")
    a = complete_matrix(8)
    got = dict(zip(cert.graph.edges, cert.coloring.assignment))
    assert all(got[(i - 1, j - 1)] == c for (i, j), c in a.items())


def test_figure1_bipartite():
    assert bipartite_matrix(3, 2) == [[1, 4], [2, 1], [3, 2]]
    cert = construct_coloring("complete_bipartite:3,2")
    assert cert.claimed_k == 4 and cert.theorem_tag == Theorem.COMPLETE_BIPARTITE


def test_wheel4():
    cert = construct_coloring("wheel:4")
    colour = dict(zip(cert.graph.edges, cert.coloring.assignment))
    assert [colour[(0, i)] for i in range(1, 5)] == [1, 2, 3, 4]
    assert colour[(1, 2)] == 3
    assert cert.claimed_k == 4


def _rep(x, t):
    return (x - 1) % t + 1


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
def test_odd_complete_codes(n):
    cert = construct_coloring(f"complete:{n}")
    for v in range(n):
        code = color_code(cert.graph, cert.coloring, v)
        assert sorted(code) == [0] * (n - 1) + [1]
        assert code.index(1) + 1 == _rep(2 * (v + 1) - 2, n)


@pytest.mark.parametrize("n", [4, 6, 10, 12, 16])
def test_even_complete_codes(n):
    cert = construct_coloring(f"complete:{n}")
    for v in range(n):
        i = v + 1
        code = color_code(cert.graph, cert.coloring, v)
        ones = {c + 1 for c, x in enumerate(code) if x == 1}
        assert ones == {_rep(2 * i - 2, n + 1), _rep(i - 2, n + 1)}


@pytest.mark.parametrize("n", [8, 14])
def test_even_complete_repaired_codes_distinct(n):
    cert = construct_coloring(f"complete:{n}")
    codes = {color_code(cert.graph, cert.coloring, v) for v in range(n)}
    assert len(codes) == n and all(sum(c) == 2 for c in codes)


# -- errors and certify ----------------------------------------------------------


@pytest.mark.parametrize("spec,exc", [("wheel:3", HypothesisError), ("windmill:1", HypothesisError),
                                      ("book:1", HypothesisError), ("monotonicity_G", InvalidFamilyError)])
def test_construct_errors(spec, exc):
    with pytest.raises(exc):
        construct_coloring(spec)


def test_certify_rejects_bad_colourings():
    with pytest.raises(ConstructionError) as info:
        certify(cycle_graph(4), [1, 2, 1, 2], 2, Theorem.CYCLE)
    assert info.value.report is not None
    with pytest.raises(ConstructionError):
        certify(path_graph(4), [1, 2, 3], 4, Theorem.PATH)  # count mismatch
    ok = certify(path_graph(4), {(0, 1): 1, (1, 2): 2, (2, 3): 3}, 3, Theorem.PATH)
    assert ok.to_dict()["theorem"] == "paths"


# -- trees -------------------------------------------------------------------------


def test_support_equality_on_balanced_double_star():
    t = family_graph("double_star:3,3")
    cert = color_tree_support(t)
    assert support_bound(t) == 5 == cert.claimed_k


def test_spider_support_and_leaves():
    spider = Graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    with pytest.raises(HypothesisError):
        color_tree_support(spider)
    assert color_tree_support(spider, strict=False).claimed_k == 6
    assert color_tree_leaves(spider).claimed_k == 3


def test_caterpillar():
    cat = Graph(6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])
    cert = color_tree_support(cat)
    assert cert.claimed_k == support_bound(cat) == 4


def test_binary_tree_leaves():
    assert color_tree_leaves(perfect_binary_tree(2)).claimed_k == 6
    with pytest.raises(HypothesisError):
        color_tree_leaves(path_graph(5))
    with pytest.raises(HypothesisError):
        color_tree_support(cycle_graph(5))


def test_random_trees_verify():
    rng = random.Random(17)
    for _ in range(150):
        t = random_tree(rng.randint(4, 14), rng)
        leaves = sum(1 for a in t.adj if len(a) == 1)
        if leaves >= 3:
            cert = color_tree_leaves(t)
            assert verify_elc(t, cert.coloring).passed
        if t.max_degree < leaves:
            cert = color_tree_support(t)
            assert cert.claimed_k == support_bound(t)


# -- matchings ---------------------------------------------------------------------


@pytest.mark.parametrize("spec,k", [("cycle:6", 4), ("cycle:5", 4), ("path:6", 3), ("path:5", 3),
                                    ("complete:5", 9)])
def test_colour_via_matching(spec, k):
    g = family_graph(spec)
    cert = color_via_matching(g)
    assert cert.claimed_k == k
    assert cert.coloring.classes()[0] and len(cert.coloring.classes()[0]) == cert.graph.m - k + 1


def test_colour_via_matching_count_on_random_graphs(random_graphs):
    from edgeloc.graph import maximum_matching

    for g in random_graphs:
        if g.n < 5:
            continue
        cert = color_via_matching(g)
        assert cert.claimed_k == g.m - len(maximum_matching(g)) + 1


def test_colour_via_matching_errors():
    with pytest.raises(HypothesisError):
        color_via_matching(cycle_graph(4))
    with pytest.raises(HypothesisError):
        color_via_matching(path_graph(5), [0, 1])


def test_disjoint_matchings():
    k4 = complete_graph(4)
    m1 = [k4.edge_id(0, 1), k4.edge_id(2, 3)]
    assert color_via_disjoint_matchings(k4, [m1]).claimed_k == 5
    k6 = complete_graph(6)
    ma = [k6.edge_id(0, 1), k6.edge_id(2, 3), k6.edge_id(4, 5)]
    mb = [k6.edge_id(1, 2), k6.edge_id(3, 4), k6.edge_id(0, 5)]
    assert color_via_disjoint_matchings(k6, [ma, mb]).claimed_k == 11
    c6 = cycle_graph(6)
    even = [c6.edge_id(0, 1), c6.edge_id(2, 3), c6.edge_id(4, 5)]
    odd = [c6.edge_id(1, 2), c6.edge_id(3, 4), c6.edge_id(0, 5)]
    with pytest.raises(HypothesisError) as info:
        color_via_disjoint_matchings(c6, [even, odd])
    assert "remainder_not_connected_spanning" in info.value.failures
    with pytest.raises(HypothesisError):
        color_via_disjoint_matchings(k6, [ma, ma])
