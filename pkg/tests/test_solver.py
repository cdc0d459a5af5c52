import random

import pytest

from edgeloc.coloring import verify_elc
from edgeloc.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    family_graph,
    path_graph,
    random_connected_graph,
)
from edgeloc.oracles import brute_force_elc
from edgeloc.solver import (
    BUDGET_EXHAUSTED,
    FEASIBLE_ONLY,
    INFEASIBLE,
    OPTIMAL,
    SolveOptions,
    elc_number,
    feasible,
    lower_bound,
    search_order,
)
from edgeloc.exceptions import DisconnectedGraphError


@pytest.mark.parametrize("n,expected", [(3, 2), (4, 3), (5, 3), (7, 3), (9, 3)])
def test_paths(n, expected):
    res = elc_number(path_graph(n))
    assert res.status == OPTIMAL and res.k == expected


@pytest.mark.parametrize("n,expected", [(3, 3), (4, 4), (5, 4), (6, 4), (8, 4)])
def test_cycles(n, expected):
    assert elc_number(cycle_graph(n)).k == expected


@pytest.mark.parametrize("spec,expected", [("double_star:3,2", 4), ("windmill:2", 5), ("book:2", 6),
                                           ("complete:4", 5), ("complete:5", 5)])
def test_named_values(spec, expected):
    res = elc_number(family_graph(spec))
    assert res.status == OPTIMAL and res.k == expected
    assert res.exhausted_k == expected - 1


def test_feasible_decisions():
    c5, k4 = cycle_graph(5), complete_graph(4)
    assert feasible(c5, 3).status == INFEASIBLE
    res = feasible(c5, 4)
    assert res.status == FEASIBLE_ONLY and verify_elc(c5, res.certificate).passed
    assert feasible(k4, 4).status == INFEASIBLE
    assert feasible(k4, 5).certificate.k == 5


def test_k6_needs_seven():
    k6 = complete_graph(6)
    assert feasible(k6, 6).status == INFEASIBLE
    assert elc_number(k6).k == 7


def test_budget_is_a_distinct_status():
    res = elc_number(complete_graph(6), SolveOptions(node_budget=50))
    assert res.status == BUDGET_EXHAUSTED and res.certificate is None
    assert res.bracket[0] >= 6
    assert feasible(complete_graph(6), 6, SolveOptions(node_budget=10)).status == BUDGET_EXHAUSTED


def test_options_validation():
    with pytest.raises(ValueError):
        SolveOptions(node_budget=0)
    with pytest.raises(ValueError):
        SolveOptions(workers=0)
    with pytest.raises(ValueError):
        feasible(path_graph(4), 0)
    with pytest.raises(DisconnectedGraphError):
        elc_number(Graph(4, [(0, 1), (2, 3)]))


def test_lower_bounds():
    assert lower_bound(family_graph("book:2")) >= 6
    assert lower_bound(path_graph(9)) == 3  # two degree-2 vertices
    assert lower_bound(complete_graph(4)) == 4
    assert lower_bound(path_graph(3)) == 2
    assert lower_bound(family_graph("star:5")) == 5


def test_upper_bound_override():
    res = elc_number(cycle_graph(6), SolveOptions(upper_bound=3))
    assert res.status == INFEASIBLE and res.certificate is None


def test_search_order_starts_at_max_degree_vertex():
    g = family_graph("double_star:3,2")
    v0, order = search_order(g)
    assert g.degree(v0) == g.max_degree
    assert sorted(order) == list(range(g.m))
    assert set(order[: g.degree(v0)]) == set(g.incident[v0])


def test_result_serialises():
    g = cycle_graph(5)
    out = elc_number(g).to_dict(g)
    assert out["status"] == OPTIMAL and out["k"] == 4
    assert len(out["certificate"]["edges"]) == 5
    assert out["proofs"]["3"] in ("lower_bound", "search")


@pytest.mark.parametrize("spec", ["cycle:7", "double_star:3,3", "complete_bipartite:3,3", "wheel:5"])
def test_determinism_across_workers(spec):
    g = family_graph(spec)
    base = elc_number(g, SolveOptions(workers=1))
    again = elc_number(g, SolveOptions(workers=1))
    par = elc_number(g, SolveOptions(workers=2))
    assert base.certificate == again.certificate
    assert par.k == base.k and par.certificate == base.certificate
    loose = elc_number(g, SolveOptions(workers=2, deterministic=False))
    assert loose.k == base.k and verify_elc(g, loose.certificate).passed


def test_agrees_with_brute_force_small_sweep(graphs_m9):
    for g in graphs_m9:
        res = elc_number(g)
        assert res.status == OPTIMAL
        assert res.k == brute_force_elc(g), g.edges


def test_agrees_with_brute_force_random():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        g = random_connected_graph(rng.randint(3, 7), rng, p=rng.choice([0.2, 0.3, 0.4]))
        if g.m > 11:
            continue
        assert elc_number(g).k == brute_force_elc(g, max_edges=11), g.edges
        checked += 1
