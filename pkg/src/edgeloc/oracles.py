"""Brute-force ground truth: automorphisms, chromatic index, edge metric
dimension and exhaustive edge-locating colouring.

Everything here is deliberately simple and shares no search code with
:mod:`edgeloc.solver`.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from .coloring import EdgeColoring
from .exceptions import BudgetError, DisconnectedGraphError
from .graph import Graph, is_connected

Automorphism = tuple  # image form: perm[v] is the image of v


def _refined_cells(g: Graph, extra=None) -> list:
    """Vertex invariant: degree, distance multiset, optional extra label."""
    dist = g.distances
    key = []
    for v in range(g.n):
        k = (len(g.adj[v]), tuple(sorted(Counter(dist[v]).items())))
        if extra is not None:
            k = k + (extra[v],)
        key.append(k)
    return key


def _automorphism_search(g: Graph, invariant, edge_color=None, limit=None, first_nontrivial=False):
    """Backtracking over vertex images, respecting ``invariant`` and distances.

    When ``edge_color`` is given only colour-preserving maps are accepted.
    """
    n = g.n
    dist = g.distances
    order = sorted(range(n), key=lambda v: (sum(1 for w in range(n) if invariant[w] == invariant[v]), v))
    image = [-1] * n
    taken = [False] * n
    found: list[tuple[int, ...]] = []

    def consistent(v, x):
        if invariant[v] != invariant[x]:
            return False
        for w in range(n):
            y = image[w]
            if y < 0:
                continue
            if dist[v][w] != dist[x][y]:
                return False
            if edge_color is not None and dist[v][w] == 1:
                if edge_color[(min(v, w), max(v, w))] != edge_color[(min(x, y), max(x, y))]:
                    return False
        return True

    def rec(i):
        if i == n:
            perm = tuple(image)
            if first_nontrivial and perm == tuple(range(n)):
                return False
            found.append(perm)
            if limit is not None and len(found) > limit:
                raise BudgetError(f"automorphism group larger than {limit}")
            return first_nontrivial
        v = order[i]
        for x in range(n):
            if not taken[x] and consistent(v, x):
                image[v] = x
                taken[x] = True
                if rec(i + 1):
                    return True
                taken[x] = False
                image[v] = -1
        return False

    rec(0)
    return found


def automorphisms(g: Graph, max_order: int = 16, limit: int = 10**6) -> list[Automorphism]:
    """Full automorphism group of a connected graph, identity first."""
    if g.n > max_order:
        raise BudgetError(f"automorphism enumeration limited to n <= {max_order}")
    if not is_connected(g):
        raise DisconnectedGraphError("automorphisms() expects a connected graph")
    found = _automorphism_search(g, _refined_cells(g), limit=limit)
    ident = tuple(range(g.n))
    found.sort(key=lambda p: (p != ident, p))
    return found


def is_automorphism(g: Graph, perm) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges)


def is_edge_distinguishing(g: Graph, c: EdgeColoring) -> bool:
    """True iff the identity is the only automorphism preserving every edge colour."""
    if not is_connected(g):
        raise DisconnectedGraphError("is_edge_distinguishing expects a connected graph")
    colour = {e: col for e, col in zip(g.edges, c.assignment)}
    incident = [tuple(sorted(colour[(min(v, w), max(v, w))] for w in g.adj[v])) for v in range(g.n)]
    witness = _automorphism_search(g, _refined_cells(g, incident), edge_color=colour, first_nontrivial=True)
    return not witness


# --------------------------------------------------------------------------
# chromatic index


def _edge_colorable(g: Graph, k: int) -> bool:
    if g.m == 0:
        return True
    if g.m > k * (g.n // 2):  # each class is a matching
        return False
    deg = [len(a) for a in g.adj]
    v0 = deg.index(max(deg))
    if deg[v0] > k:
        return False
    first = list(g.incident[v0])
    rest = [e for e in range(g.m) if e not in set(first)]
    # colour edges near already-coloured ones first
    order = first[:]
    seen_v = {v0}
    while rest:
        rest.sort(key=lambda e: -(g.edges[e][0] in seen_v) - (g.edges[e][1] in seen_v))
        e = rest.pop(0)
        order.append(e)
        seen_v.update(g.edges[e])
    used = [0] * g.n
    ends = [g.edges[e] for e in order]

    for i in range(len(first)):
        a, b = ends[i]
        used[a] |= 1 << (i + 1)
        used[b] |= 1 << (i + 1)

    def rec(i, top):
        if i == len(ends):
            return True
        a, b = ends[i]
        busy = used[a] | used[b]
        for c in range(1, min(k, top + 1) + 1):
            if busy >> c & 1:
                continue
            used[a] |= 1 << c
            used[b] |= 1 << c
            if rec(i + 1, max(top, c)):
                return True
            used[a] &= ~(1 << c)
            used[b] &= ~(1 << c)
        return False

    return rec(len(first), len(first))


def chromatic_index_exact(g: Graph, max_edges: int = 20) -> int:
    """Exact chromatic index by backtracking over k = Δ, Δ+1, ..."""
    if g.m > max_edges:
        raise BudgetError(f"chromatic_index_exact limited to m <= {max_edges}")
    k = max((len(a) for a in g.adj), default=0)
    while not _edge_colorable(g, k):
        k += 1
    return k


# --------------------------------------------------------------------------
# edge metric dimension


def _ve_dist(g: Graph):
    d = g.distances
    return [[min(d[v][a], d[v][b]) for (a, b) in g.edges] for v in range(g.n)]


def _ee_dist(g: Graph):
    """Distance in the line graph: 0 on the diagonal, endpoint minimum + 1 elsewhere."""
    d = g.distances
    return [[0 if i == j else min(d[a][x], d[a][y], d[b][x], d[b][y]) + 1
             for j, (x, y) in enumerate(g.edges)] for i, (a, b) in enumerate(g.edges)]


EDGES_RESOLVE_EDGES = "edges_resolve_edges"
EDGES_RESOLVE_VERTICES = "edges_resolve_vertices"


def edge_metric_dimension(g: Graph, variant: str = EDGES_RESOLVE_EDGES,
                          max_edges: int = 20) -> tuple[int, tuple[int, ...]]:
    """Smallest edge set S whose distance vectors separate all edges
    (``edges_resolve_edges``) or all vertices (``edges_resolve_vertices``).

    Returns ``(size, witness edge ids)``.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("edge metric dimension needs a connected graph")
    if g.m > max_edges:
        raise BudgetError(f"edge_metric_dimension limited to m <= {max_edges}")
    if variant == EDGES_RESOLVE_EDGES:
        table = _ee_dist(g)
    elif variant == EDGES_RESOLVE_VERTICES:
        table = _ve_dist(g)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    items = len(table)
    for size in range(0, g.m + 1):
        for subset in combinations(range(g.m), size):
            vectors = {tuple(table[x][s] for s in subset) for x in range(items)}
            if len(vectors) == items:
                return size, subset
    raise AssertionError("the full edge set always resolves")  # pragma: no cover


# --------------------------------------------------------------------------
# exhaustive edge-locating number


def brute_force_elc(g: Graph, k_max: int | None = None, max_edges: int = 9) -> float:
    """Smallest k <= k_max with an edge-locating k-colouring, else ``inf``.

    Enumerates every proper colouring in canonical form (edge 0 gets colour 1,
    each new colour is the next unused one), i.e. every partition of E(G) into
    matchings exactly once.
    """
    if not is_connected(g) or g.n < 3:
        raise DisconnectedGraphError("brute_force_elc needs a connected graph with n >= 3")
    if g.m > max_edges:
        raise BudgetError(f"brute_force_elc limited to m <= {max_edges}")
    k_max = g.m if k_max is None else k_max
    ve = _ve_dist(g)
    m, n = g.m, g.n
    inc_of = [[j for j in range(i) if set(g.edges[i]) & set(g.edges[j])] for i in range(m)]
    colours = [0] * m
    best = [float("inf")]

    def locating(k):
        codes = set()
        for v in range(n):
            code = [99] * k
            row = ve[v]
            for e in range(m):
                c = colours[e] - 1
                if row[e] < code[c]:
                    code[c] = row[e]
            codes.add(tuple(code))
        return len(codes) == n

    def rec(i, top):
        if top >= best[0]:
            return
        if i == m:
            if top <= k_max and locating(top):
                best[0] = top
            return
        banned = {colours[j] for j in inc_of[i]}
        for c in range(1, top + 2):
            if c in banned:
                continue
            colours[i] = c
            rec(i + 1, max(top, c))
        colours[i] = 0

    rec(0, 0)
    return best[0]
