import random

import pytest

from edgeloc.graph import connected_graphs_by_order, connected_graphs_by_size, random_connected_graph


@pytest.fixture(scope="session")
def graphs_m9():
    """Every connected graph with at most 9 edges and at least 3 vertices, up to isomorphism."""
    return [g for g in connected_graphs_by_size(9) if g.n >= 3]


@pytest.fixture(scope="session")
def graphs_n7():
    return connected_graphs_by_order(7, 3)


@pytest.fixture(scope="session")
def random_graphs():
    rng = random.Random(20240601)
    return [random_connected_graph(rng.randint(3, 8), rng, p=rng.choice([0.2, 0.35, 0.5])) for _ in range(200)]
