"""Simple undirected graphs: representation, I/O, distances, matchings and family generators.

Vertices are ``0..n-1``. Edges are stored once as ``(u, v)`` with ``u < v``;
an edge's identity is its insertion index, so colorings are plain arrays
indexed by edge id.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .exceptions import (
    DisconnectedGraphError,
    GraphFormatError,
    InvalidFamilyError,
    UnsupportedSizeError,
)

INF = math.inf  # distance sentinel for unreachable pairs

Edge = tuple[int, int]


class Graph:
    """Immutable simple undirected graph with stable edge indices."""

    __slots__ = ("n", "edges", "adj", "_index", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm: list[Edge] = []
        index: dict[Edge, int] = {}
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in index:
                raise ValueError(f"duplicate edge {e}")
            index[e] = len(norm)
            norm.append(e)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(norm)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        """Index of edge ``uv``; raises ``KeyError`` if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex tuple of incident edge ids, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def distances(self) -> tuple[tuple[float, ...], ...]:
        return all_pairs_distances(self)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``; edge order is kept."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((self.n, self.edge_set()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def check_graph(g, *, connected: bool = True, min_order: int = 3) -> Graph:
    """Validate input for the coloring operations.

    Accepts a :class:`Graph` or a ``networkx.Graph`` with integer nodes
    ``0..n-1``. Raises ``DisconnectedGraphError`` / ``ValueError``.
    """
    if not isinstance(g, Graph):
        try:
            nodes = sorted(g.nodes())
            pairs = list(g.edges())
        except AttributeError:
            raise TypeError(f"expected a Graph, got {type(g).__name__}") from None
        if nodes != list(range(len(nodes))):
            raise ValueError("networkx input must use nodes 0..n-1")
        g = Graph(len(nodes), pairs)
    if g.n < min_order:
        raise ValueError(f"graph needs at least {min_order} vertices, got {g.n}")
    if connected and not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    return g


# --------------------------------------------------------------------------
# graph6 and edge lists


def parse_graph6(text: str | bytes) -> Graph:
    """Parse one short-form graph6 word (n <= 62)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ord(ch)} outside graph6 alphabet", i)
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphFormatError("long-form graph6 (n > 62) is not supported", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) < need:
        raise GraphFormatError(f"truncated: expected {need} data bytes, got {len(body)}", len(s))
    if len(body) > need:
        raise GraphFormatError("trailing garbage after graph6 word", 1 + need)
    bits = []
    for ch in body:
        x = ord(ch) - 63
        bits.extend((x >> (5 - b)) & 1 for b in range(6))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits", len(s) - 1)
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph(n, sorted(edges))


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise UnsupportedSizeError("graph6 short form supports n <= 62")
    bits = [1 if g.has_edge(u, v) else 0 for v in range(1, g.n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        out.append(chr(63 + x))
    return "".join(out)


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; edge order is file order."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty edge list", 1)
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise GraphFormatError("header must be 'n m'", lineno) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header", lineno)
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}", lineno)
    edges = []
    seen = set()
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("non-integer vertex", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


# --------------------------------------------------------------------------
# distances and basic statistics


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] == INF:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def all_pairs_distances(g: Graph) -> tuple[tuple[float, ...], ...]:
    """BFS hop distances; unreachable pairs hold :data:`INF`."""
    return tuple(tuple(bfs_distances(g, s)) for s in range(g.n))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return all(d != INF for d in bfs_distances(g, 0))


def diameter(g: Graph) -> int:
    if not is_connected(g):
        raise DisconnectedGraphError("diameter of a disconnected graph is infinite")
    return int(max((max(row) for row in g.distances), default=0))


def degree_census(g: Graph) -> dict[int, int]:
    """Map degree -> number of vertices of that degree."""
    return dict(sorted(Counter(len(a) for a in g.adj).items()))


def maximum_matching(g: Graph) -> frozenset[int]:
    """Maximum-cardinality matching (Edmonds' blossom algorithm) as edge ids."""
    n = g.n
    adj = g.adj
    match = [-1] * n
    # greedy start
    for u, v in g.edges:
        if match[u] == -1 and match[v] == -1:
            match[u], match[v] = v, u

    def search_and_augment(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        x = to
                        while x != -1:
                            pv = parent[x]
                            nxt = match[pv]
                            match[x], match[pv] = pv, x
                            x = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for root in range(n):
        if match[root] == -1:
            search_and_augment(root)
    return frozenset(g.edge_id(u, match[u]) for u in range(n) if match[u] > u)


def is_matching(g: Graph, edge_ids: Iterable[int]) -> bool:
    seen: set[int] = set()
    for i in edge_ids:
        u, v = g.edges[i]
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


# --------------------------------------------------------------------------
# constructions of graphs


def join_graphs(g: Graph, h: Graph) -> Graph:
    """``G + H``: G's vertices first, then H's shifted by ``g.n``.

    Edge order: E(G), E(H), then cross pairs in row-major order.
    """
    if g.n == 0 or h.n == 0:
        raise ValueError("join needs two nonempty graphs")
    s = g.n
    edges = list(g.edges)
    edges += [(u + s, v + s) for u, v in h.edges]
    edges += [(u, s + v) for u in range(g.n) for v in range(h.n)]
    return Graph(g.n + h.n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return Graph(offset, edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` (renumbered in ascending order) and the old labels."""
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return Graph(len(keep), edges), keep


def remove_edges(g: Graph, edge_ids: Iterable[int]) -> Graph:
    drop = set(edge_ids)
    return Graph(g.n, [e for i, e in enumerate(g.edges) if i not in drop])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidFamilyError("cycle needs n >= 3")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(n: int, m: int) -> Graph:
    return Graph(n + m, [(i, n + j) for i in range(n) for j in range(m)])


def matching_graph(k: int) -> Graph:
    """``kK_2``: edges (0,1), (2,3), ..."""
    return Graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def perfect_binary_tree(depth: int) -> Graph:
    """Root 0; children of ``i`` are ``2i+1`` and ``2i+2``; leaves at distance ``depth``."""
    n = 2 ** (depth + 1) - 1
    return Graph(n, [((i - 1) // 2, i) for i in range(1, n)])


FAMILIES = {
    "path": 1,
    "cycle": 1,
    "complete": 1,
    "complete_bipartite": 2,
    "star": 1,
    "double_star": 2,
    "wheel": 1,
    "fan": 1,
    "windmill": 1,
    "book": 1,
    "perfect_binary_tree": 1,
    "spectrum_tree": 2,
    "monotonicity_G": 0,
    "monotonicity_H": 0,
    "complete_minus_matching": 2,
}


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family with its integer parameters.

    Parameter meaning per family: ``complete_bipartite(n, m)``,
    ``double_star(p, q)`` with ``p >= q``, ``spectrum_tree(m, k)`` (size m,
    target value k), ``complete_minus_matching(n, k)``; the rest take one
    order-like parameter.
    """

    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        self.validate()

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"family:p1,p2"`` (e.g. ``"wheel:7"``, ``"double_star:3,2"``)."""
        name, _, rest = text.strip().partition(":")
        try:
            params = tuple(int(x) for x in rest.split(",") if x.strip())
        except ValueError:
            raise InvalidFamilyError(f"non-integer parameter in {text!r}") from None
        return cls(name, params)

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}:{','.join(map(str, self.params))}"

    def validate(self) -> None:
        f, p = self.family, self.params
        if f not in FAMILIES:
            raise InvalidFamilyError(f"unknown family {f!r}")
        if len(p) != FAMILIES[f]:
            raise InvalidFamilyError(f"{f} takes {FAMILIES[f]} parameter(s), got {len(p)}")
        checks = {
            "path": lambda: p[0] >= 1,
            "cycle": lambda: p[0] >= 3,
            "complete": lambda: p[0] >= 1,
            "complete_bipartite": lambda: p[0] >= 1 and p[1] >= 1,
            "star": lambda: p[0] >= 1,
            "double_star": lambda: p[0] >= p[1] >= 1,
            "wheel": lambda: p[0] >= 3,
            "fan": lambda: p[0] >= 1,
            "windmill": lambda: p[0] >= 1,
            "book": lambda: p[0] >= 1,
            "perfect_binary_tree": lambda: p[0] >= 1,
            "spectrum_tree": lambda: p[0] >= 3 and 3 <= p[1] <= p[0],
            "monotonicity_G": lambda: True,
            "monotonicity_H": lambda: True,
            "complete_minus_matching": lambda: p[0] >= 2 and 0 <= p[1] <= p[0] // 2,
        }
        if not checks[f]():
            raise InvalidFamilyError(f"invalid parameters for {f}: {p}")


def family_graph(spec: FamilySpec | str) -> Graph:
    """Build a family member with the documented vertex numbering.

    * wheel/fan/windmill/book: built as joins, hub(s) first then the rim
      ``v_1..`` in order (``v_i`` is vertex ``i`` for one hub, ``i+1`` for two).
    * double_star(p, q): centre ``v=0``, centre ``u=1``, then v's leaves, then u's.
    * spectrum_tree(m, k): ``P_{m+1}`` for ``k=3``; otherwise a broom whose
      centre 1 has leaves 0, 2..k-1 and a tail k, k+1, ..., m.
    * monotonicity_G: ``T_3`` plus pendant vertex 15 at the root 0;
      monotonicity_H adds the edge (0, 7) to a depth-3 leaf.
    * complete_minus_matching(n, k): ``K_n`` minus (0,1), (2,3), ...
    """
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    f, p = spec.family, spec.params
    if f == "path":
        return path_graph(p[0])
    if f == "cycle":
        return cycle_graph(p[0])
    if f == "complete":
        return complete_graph(p[0])
    if f == "complete_bipartite":
        return complete_bipartite_graph(p[0], p[1])
    if f == "star":
        return complete_bipartite_graph(1, p[0])
    if f == "double_star":
        a, b = p
        edges = [(0, 1)] + [(0, 2 + i) for i in range(a)] + [(1, 2 + a + j) for j in range(b)]
        return Graph(2 + a + b, edges)
    if f == "wheel":
        return join_graphs(Graph(1), cycle_graph(p[0]))
    if f == "fan":
        return join_graphs(Graph(1), path_graph(p[0]))
    if f == "windmill":
        return join_graphs(Graph(1), matching_graph(p[0]))
    if f == "book":
        return join_graphs(Graph(2, [(0, 1)]), matching_graph(p[0]))
    if f == "perfect_binary_tree":
        return perfect_binary_tree(p[0])
    if f == "spectrum_tree":
        m, k = p
        if k == 3:
            return path_graph(m + 1)
        edges = [(1, 0)] + [(1, i) for i in range(2, k + 1)] + [(i, i + 1) for i in range(k, m)]
        return Graph(m + 1, edges)
    if f in ("monotonicity_G", "monotonicity_H"):
        t = perfect_binary_tree(3)
        edges = list(t.edges) + [(0, 15)]
        if f == "monotonicity_H":
            edges.append((0, 7))
        return Graph(16, edges)
    if f == "complete_minus_matching":
        n, k = p
        removed = {(2 * i, 2 * i + 1) for i in range(k)}
        return Graph(n, [e for e in complete_graph(n).edges if e not in removed])
    raise InvalidFamilyError(f)  # pragma: no cover


# --------------------------------------------------------------------------
# corpora


def random_connected_graph(n: int, rng: random.Random, p: float = 0.3) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_tree(n: int, rng: random.Random) -> Graph:
    return random_connected_graph(n, rng, p=0.0)


def _to_nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def _from_nx(h) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), sorted(tuple(sorted((pos[u], pos[v]))) for u, v in h.edges()))


def _invariant(g: Graph):
    dist = g.distances
    return (g.n, g.m, tuple(sorted(
        (len(g.adj[v]), tuple(sorted(Counter(dist[v]).items())),
         tuple(sorted(len(g.adj[w]) for w in g.adj[v])))
        for v in range(g.n))))


def connected_graphs_by_size(max_edges: int) -> list[Graph]:
    """All connected graphs with 1..max_edges edges, one per isomorphism class.

    Every connected graph with m+1 edges arises from one with m edges by adding
    a chord or a pendant edge, so augmentation is exhaustive.
    """
    import networkx as nx

    layer = [Graph(2, [(0, 1)])]
    out = list(layer)
    for _ in range(1, max_edges):
        buckets: dict = {}
        nxt = []
        for g in layer:
            cands = [Graph(g.n, g.edges + ((u, v),))
                     for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
            cands += [Graph(g.n + 1, g.edges + ((u, g.n),)) for u in range(g.n)]
            for c in cands:
                key = _invariant(c)
                bucket = buckets.setdefault(key, [])
                cn = _to_nx(c)
                if any(nx.is_isomorphic(cn, other) for _, other in bucket):
                    continue
                bucket.append((c, cn))
                nxt.append(c)
        layer = nxt
        out += layer
    return out


def connected_graphs_by_order(max_order: int, min_order: int = 1) -> list[Graph]:
    """All connected graphs with ``min_order..max_order`` vertices (max 7), from the graph atlas."""
    import networkx as nx

    if max_order > 7:
        raise UnsupportedSizeError("graph atlas covers n <= 7")
    return [_from_nx(h) for h in nx.graph_atlas_g()
            if min_order <= h.number_of_nodes() <= max_order and h.number_of_nodes() > 0
            and nx.is_connected(h)]
