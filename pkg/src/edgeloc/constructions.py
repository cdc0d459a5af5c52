"""Closed-form edge-locating colourings for graph families and trees.

Every public constructor verifies its output with :func:`verify_elc` and
raises :class:`ConstructionError` (carrying the report) instead of returning
an unverified colouring.

All ``x mod t`` colour arithmetic uses representatives ``1..t``.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .coloring import EdgeColoring, VerificationReport, verify_elc
from .exceptions import ConstructionError, HypothesisError, InvalidFamilyError
from .graph import (
    FamilySpec,
    Graph,
    complete_graph,
    family_graph,
    induced_subgraph,
    is_connected,
    is_matching,
    maximum_matching,
)

log = logging.getLogger(__name__)


class Theorem(str, Enum):
    PATH = "paths"
    CYCLE = "cycles"
    STAR = "size_m_stars"
    COMPLETE_BIPARTITE = "complete_bipartite"
    COMPLETE_BIPARTITE_BALANCED = "complete_bipartite_balanced"
    COMPLETE_ODD = "complete_odd"
    COMPLETE_EVEN = "complete_even"
    COMPLETE_MINUS_MATCHING_ODD = "complete_minus_matching_odd"
    COMPLETE_MINUS_MATCHING_EVEN = "complete_minus_matching_even"
    COMPLETE_MINUS_CLASSES = "complete_minus_classes"
    WHEEL = "wheel"
    FAN = "fan"
    WINDMILL = "windmill"
    BOOK = "book"
    DOUBLE_STAR = "double_star"
    SPECTRUM_TREE = "tree_spectrum"
    TREE_SUPPORT = "tree_support_bound"
    TREE_LEAVES = "tree_leaves_bound"
    PERFECT_MATCHING = "perfect_matching_bound"
    MAXIMUM_MATCHING = "maximum_matching_bound"
    DISJOINT_MATCHINGS = "disjoint_perfect_matchings_bound"
    SOLVER = "solver"


@dataclass(frozen=True)
class CertifiedColoring:
    graph: Graph
    coloring: EdgeColoring
    claimed_k: int
    theorem_tag: Theorem
    report: VerificationReport

    def to_dict(self) -> dict:
        from .graph import encode_graph6

        g = self.graph
        return {
            "graph6": encode_graph6(g) if g.n <= 62 else None,
            "n": g.n,
            "coloring": {"k": self.coloring.k,
                         "edges": [[u, v, c] for (u, v), c in zip(g.edges, self.coloring.assignment)]},
            "claimed_k": self.claimed_k,
            "theorem": self.theorem_tag.value,
            "report": self.report.to_dict(),
        }


def _rep(x: int, t: int) -> int:
    return (x - 1) % t + 1


def certify(g: Graph, colours: Sequence[int] | dict, claimed_k: int, tag: Theorem) -> CertifiedColoring:
    """Bundle a colouring (list by edge id, or dict keyed by edge pair) after verifying it."""
    if isinstance(colours, dict):
        colours = [colours[e] for e in g.edges]
    c = EdgeColoring.normalize(colours)
    report = verify_elc(g, c)
    if not report.passed:
        raise ConstructionError(f"{tag.value} construction failed verification", report)
    if c.k != claimed_k:
        raise ConstructionError(f"{tag.value} construction used {c.k} colours, expected {claimed_k}", report)
    return CertifiedColoring(g, c, claimed_k, tag, report)


# --------------------------------------------------------------------------
# per-family colourings; each returns {edge pair: colour}


def _path(n):
    if n == 3:
        return [1, 2]
    # pendant edge gets 3, the rest alternate 1, 2
    return [3] + [1 + (i % 2) for i in range(n - 2)]


def _cycle(n):
    if n == 3:
        return [1, 2, 3]
    # cycle edge order: (0,1), (1,2), ..., (n-2,n-1), (0,n-1)
    colours = [3, 4] + [1 + (i % 2) for i in range(n - 2)]
    return colours


def bipartite_matrix(n: int, m: int) -> list[list[int]]:
    """Colour of edge ``b_i c_j`` at ``[i-1][j-1]``."""
    if n == m:
        rows = [[_rep(i + j - 1, n + 2) for j in range(1, n + 1)] for i in range(1, n)]
        rows.append([_rep(x + 2, n + 2) for x in rows[-1]]) if rows else rows.append([1])
        return rows
    if n > m:
        return [[(i - j) % (n + 1) + 1 for j in range(1, m + 1)] for i in range(1, n + 1)]
    return [[(j - i) % (m + 1) + 1 for j in range(1, m + 1)] for i in range(1, n + 1)]


def complete_matrix(n: int) -> dict[tuple[int, int], int]:
    """Colour of ``e_ij`` (1-based, i < j) for K_n: n colours for odd n, n+1 for even n."""
    if n % 2:
        return {(i, j): _rep(i + j - 2, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    t = n + 1
    alpha = {(i, j): _rep(i + j - 2, t) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    if t % 3 == 0:
        # vertices k and 2k share their two missing colours; swapping the colours
        # of e_{l,k} and e_{l,k+1} for l < k separates them
        k = t // 3
        for l in range(1, k):
            alpha[(l, k)], alpha[(l, k + 1)] = alpha[(l, k + 1)], alpha[(l, k)]
    return alpha


def _complete(n):
    alpha = complete_matrix(n)
    return {(i - 1, j - 1): c for (i, j), c in alpha.items()}


def _relabelled(colours: dict, removed: list[tuple[int, int]], n: int) -> dict:
    """Move ``removed`` onto (0,1), (2,3), ... and return colours of the kept edges."""
    perm = [-1] * n
    for i, (a, b) in enumerate(removed):
        perm[a], perm[b] = 2 * i, 2 * i + 1
    rest = iter(range(2 * len(removed), n))
    for v in range(n):
        if perm[v] < 0:
            perm[v] = next(rest)
    drop = set(removed)
    return {tuple(sorted((perm[a], perm[b]))): c for (a, b), c in colours.items() if (a, b) not in drop}


def _class_sizes(colours: dict) -> dict[int, list]:
    out: dict[int, list] = {}
    for e, c in sorted(colours.items()):
        out.setdefault(c, []).append(e)
    return out


def _complete_minus_matching(n, k):
    base = _complete(n)
    classes = _class_sizes(base)
    half = n // 2
    if k == 0:
        return base, (n if n % 2 else n + 1), (Theorem.COMPLETE_ODD if n % 2 else Theorem.COMPLETE_EVEN)
    if n % 2:
        removed = classes[1][:k]
        claim = n - 1 if k == half else n
        return _relabelled(base, removed, n), claim, Theorem.COMPLETE_MINUS_MATCHING_ODD
    if k == half:
        perfect = [c for c, es in classes.items() if len(es) == half][0]
        return _relabelled(base, classes[perfect], n), n, Theorem.COMPLETE_MINUS_MATCHING_EVEN
    if k == half - 1:
        c = min(c for c, es in classes.items() if len(es) == half - 1)
        return _relabelled(base, classes[c], n), n, Theorem.COMPLETE_MINUS_MATCHING_EVEN
    raise HypothesisError(f"no closed form for K_{n} minus a {k}-matching (need k in {{{half - 1}, {half}}})",
                          ["matching_size"])


def _wheel_or_fan(n, fan):
    # vertex 0 is the hub, v_i is vertex i
    colours = {(0, i): i for i in range(1, n + 1)}
    last = n if not fan else n - 1
    for i in range(1, last + 1):
        j = i % n + 1
        colours[tuple(sorted((i, j)))] = (i + 1) % n + 1
    return colours


def _windmill(n):
    colours = {(0, i): i for i in range(1, 2 * n + 1)}
    for i in range(1, 2 * n, 2):
        colours[(i, i + 1)] = (i + 1) % (2 * n) + 1
    if n == 2:
        colours[(3, 4)] = 5
    return colours


def _book(n):
    c1, c2 = 0, 1
    v = lambda i: i + 1  # v_i
    colours = {(c1, c2): 1}
    for i in range(1, n + 1):
        colours[(v(2 * i - 1), v(2 * i))] = 1
        colours[(c1, v(2 * i - 1))] = _rep(i + 1, 2 * n + 2)
        colours[(c2, v(2 * i))] = _rep(i + 1, 2 * n + 2)
    colours[(c1, v(2))] = n + 2
    for i in range(1, n):
        colours[(c1, v(2 * i + 2))] = (n + 1 + i) % (2 * n + 2) + 1
        colours[(c2, v(2 * i - 1))] = (n + 1 + i) % (2 * n + 2) + 1
    colours[(c2, v(2 * n - 1))] = 2 * n + 2
    return colours


def _double_star(p, q):
    colours = {(0, 1): p + 1}
    for i in range(1, p + 1):
        colours[(0, 1 + i)] = i
    for j in range(1, q + 1):
        colours[(1, 1 + p + j)] = j
    if p == q:
        colours[(1, 2 + p)] = p + 2
    return colours


def _spectrum_tree(m, k):
    if k == 3:
        return _path(m + 1), 3
    # centre 1: leaf 0 -> 1, leaves 2..k-1 -> 2..k-1, tail start k -> k;
    # tail edges alternate 1, k
    colours = {(0, 1): 1}
    for i in range(2, k + 1):
        colours[(1, i)] = i if i < k else k
    for t, i in enumerate(range(k, m)):
        colours[(i, i + 1)] = 1 if t % 2 == 0 else k
    return colours, k


def construct_coloring(spec: FamilySpec | str) -> CertifiedColoring:
    """Theorem colouring for a family member, verified before return."""
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    g = family_graph(spec)
    f, p = spec.family, spec.params
    if g.n < 3:
        raise InvalidFamilyError(f"{spec} has fewer than 3 vertices")
    if f == "path":
        return certify(g, _path(p[0]), 2 if p[0] == 3 else 3, Theorem.PATH)
    if f == "cycle":
        return certify(g, _cycle(p[0]), 3 if p[0] == 3 else 4, Theorem.CYCLE)
    if f == "star":
        return certify(g, list(range(1, g.m + 1)), g.m, Theorem.STAR)
    if f == "complete_bipartite":
        n, m = p
        if min(n, m) == 1:
            return certify(g, list(range(1, g.m + 1)), g.m, Theorem.STAR)
        a = bipartite_matrix(n, m)
        colours = {(i, n + j): a[i][j] for i in range(n) for j in range(m)}
        if n == m:
            return certify(g, colours, n + 2, Theorem.COMPLETE_BIPARTITE_BALANCED)
        return certify(g, colours, max(n, m) + 1, Theorem.COMPLETE_BIPARTITE)
    if f == "complete":
        n = p[0]
        if n % 2:
            return certify(g, _complete(n), n, Theorem.COMPLETE_ODD)
        try:
            return certify(g, _complete(n), n + 1, Theorem.COMPLETE_EVEN)
        except ConstructionError:
            log.warning("even K_%d repair failed verification; falling back to the solver", n)
            return _solver_fallback(g)
    if f == "complete_minus_matching":
        colours, claim, tag = _complete_minus_matching(*p)
        return certify(g, colours, claim, tag)
    if f == "wheel":
        if p[0] < 4:
            raise HypothesisError("wheel colouring needs n >= 4", ["n>=4"])
        return certify(g, _wheel_or_fan(p[0], fan=False), p[0], Theorem.WHEEL)
    if f == "fan":
        n = p[0]
        if n == 2:
            return certify(g, {(1, 2): 3, (0, 1): 1, (0, 2): 2}, 3, Theorem.FAN)
        if n == 3:
            return certify(g, {(1, 2): 3, (2, 3): 4, (0, 1): 1, (0, 2): 2, (0, 3): 3}, 4, Theorem.FAN)
        return certify(g, _wheel_or_fan(n, fan=True), n, Theorem.FAN)
    if f == "windmill":
        n = p[0]
        if n < 2:
            raise HypothesisError("windmill colouring needs n >= 2", ["n>=2"])
        return certify(g, _windmill(n), 5 if n == 2 else 2 * n, Theorem.WINDMILL)
    if f == "book":
        n = p[0]
        if n < 2:
            raise HypothesisError("book colouring needs n >= 2", ["n>=2"])
        return certify(g, _book(n), 2 * n + 2, Theorem.BOOK)
    if f == "double_star":
        a, b = p
        return certify(g, _double_star(a, b), a + 1 if a > b else a + 2, Theorem.DOUBLE_STAR)
    if f == "spectrum_tree":
        colours, claim = _spectrum_tree(*p)
        return certify(g, colours, claim, Theorem.SPECTRUM_TREE)
    if f == "perfect_binary_tree":
        return color_tree_leaves(g)
    raise InvalidFamilyError(f"no closed-form colouring for {f}; use the solver")


def _solver_fallback(g: Graph) -> CertifiedColoring:
    from .solver import elc_number

    res = elc_number(g)
    if res.certificate is None:
        raise ConstructionError("solver fallback did not return a certificate")
    return certify(g, res.certificate.assignment, res.k, Theorem.SOLVER)


def complete_minus_classes(order: int, m: int) -> CertifiedColoring:
    """K_{2n} minus its perfect colour class and ``m`` classes of size n-1.

    The deleted classes are the first choice (in colour order) that keeps the
    colouring edge-locating; the result uses 2n - m colours.
    """
    if order % 2 or order < 4:
        raise HypothesisError("order must be even and >= 4", ["even_order"])
    n = order // 2
    if not 1 <= m <= n - 1:
        raise HypothesisError(f"need 1 <= m <= {n - 1}", ["m_range"])
    base = _complete(order)
    classes = _class_sizes(base)
    perfect = [c for c, es in classes.items() if len(es) == n][0]
    small = sorted(c for c, es in classes.items() if len(es) == n - 1)
    last: ConstructionError | None = None
    for chosen in combinations(small, m):
        drop = {perfect, *chosen}
        kept = {e: c for e, c in base.items() if c not in drop}
        g = Graph(order, sorted(kept))
        if not is_connected(g):
            continue
        try:
            return certify(g, kept, 2 * n - m, Theorem.COMPLETE_MINUS_CLASSES)
        except ConstructionError as exc:
            last = exc
    raise ConstructionError(f"no choice of {m} classes works for K_{order}", last.report if last else None)


# --------------------------------------------------------------------------
# trees


def _tree_parts(t: Graph):
    if not is_connected(t) or t.m != t.n - 1:
        raise HypothesisError("input is not a tree", ["tree"])
    if t.n < 3:
        raise HypothesisError("tree needs at least 3 vertices", ["n>=3"])
    leaves = [v for v in range(t.n) if len(t.adj[v]) == 1]
    support: dict[int, list[int]] = {}
    for leaf in leaves:
        support.setdefault(t.adj[leaf][0], []).append(leaf)
    inner = [v for v in range(t.n) if len(t.adj[v]) > 1]
    return leaves, support, inner


def proper_tree_coloring(t: Graph) -> dict[tuple[int, int], int]:
    """Proper edge colouring of a tree with Δ colours (greedy from a root)."""
    if t.n <= 1:
        return {}
    colours: dict[tuple[int, int], int] = {}
    root = 0
    seen = {root}
    queue = deque([(root, 0)])
    while queue:
        v, parent_colour = queue.popleft()
        nxt = 1
        for w in t.adj[v]:
            if w in seen:
                continue
            if nxt == parent_colour:
                nxt += 1
            colours[tuple(sorted((v, w)))] = nxt
            seen.add(w)
            queue.append((w, nxt))
            nxt += 1
    return colours


def _inner_coloring(t: Graph, inner: list[int]):
    sub, labels = induced_subgraph(t, inner)
    col = proper_tree_coloring(sub)
    delta = sub.max_degree
    return {(labels[a], labels[b]): c for (a, b), c in col.items()}, delta


def support_bound(t: Graph) -> int:
    """Δ(T') + ℓ_k + k - 1 for a tree (T' the non-leaf subtree)."""
    leaves, support, inner = _tree_parts(t)
    sub, _ = induced_subgraph(t, inner)
    return sub.max_degree + max(len(x) for x in support.values()) + len(support) - 1


def color_tree_support(t: Graph, strict: bool = True) -> CertifiedColoring:
    """Support-vertex scheme: Δ(T')-colour the inner tree, then give each support
    vertex ``v_i`` (ascending leaf count) pendant colours
    ``D+1..D+ℓ_i-1`` plus its own fresh colour ``D+ℓ_k+i``; ``v_k`` takes
    ``D+1..D+ℓ_k``.

    ``strict=False`` skips the Δ(T) < #leaves check; the result is still verified.
    """
    leaves, support, inner = _tree_parts(t)
    if strict and t.max_degree >= len(leaves):
        raise HypothesisError("support bound needs Δ(T) < number of leaves; use color_tree_leaves",
                              ["max_degree<leaves"])
    colours, delta = _inner_coloring(t, inner)
    ordered = sorted(support, key=lambda v: (len(support[v]), v))
    k = len(ordered)
    top = len(support[ordered[-1]])
    for i, v in enumerate(ordered, start=1):
        pend = sorted(support[v])
        if i == k:
            cols = [delta + j for j in range(1, top + 1)]
        else:
            cols = [delta + j for j in range(1, len(pend))] + [delta + top + i]
        for leaf, c in zip(pend, cols):
            colours[tuple(sorted((v, leaf)))] = c
    return certify(t, colours, delta + top + k - 1, Theorem.TREE_SUPPORT)


def color_tree_leaves(t: Graph) -> CertifiedColoring:
    """Spider scheme when Δ(T) equals the leaf count, else Δ(T') + (#leaves) colours."""
    leaves, support, inner = _tree_parts(t)
    m = len(leaves)
    if m < 3:
        raise HypothesisError("needs at least 3 leaves (paths are handled by construct_coloring)",
                              ["leaves>=3"])
    if t.max_degree == m:
        centre = next(v for v in range(t.n) if len(t.adj[v]) == m)
        colours = {}
        for i, w in enumerate(t.adj[centre], start=1):
            pair = (i, i + 1) if i < m else (m, 1)
            prev, cur, step = centre, w, 0
            while True:
                colours[tuple(sorted((prev, cur)))] = pair[step % 2]
                step += 1
                nxt = [x for x in t.adj[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
        return certify(t, colours, m, Theorem.TREE_LEAVES)
    colours, delta = _inner_coloring(t, inner)
    for j, leaf in enumerate(sorted(leaves), start=1):
        colours[tuple(sorted((leaf, t.adj[leaf][0])))] = delta + j
    return certify(t, colours, delta + m, Theorem.TREE_LEAVES)


# --------------------------------------------------------------------------
# matchings


def color_via_matching(g: Graph, matching: Iterable[int] | None = None) -> CertifiedColoring:
    """Colour 1 on a maximum matching, a fresh colour on every other edge."""
    if g.n < 5:
        raise HypothesisError("matching bound needs n >= 5", ["n>=5"])
    if not is_connected(g):
        raise HypothesisError("graph must be connected", ["connected"])
    mset = set(maximum_matching(g) if matching is None else matching)
    if not is_matching(g, mset):
        raise HypothesisError("edge set is not a matching", ["matching"])
    colours = []
    nxt = 2
    for e in range(g.m):
        if e in mset:
            colours.append(1)
        else:
            colours.append(nxt)
            nxt += 1
    tag = Theorem.PERFECT_MATCHING if 2 * len(mset) == g.n else Theorem.MAXIMUM_MATCHING
    return certify(g, colours, g.m - len(mset) + 1, tag)


def color_via_disjoint_matchings(g: Graph, matchings: Sequence[Iterable[int]]) -> CertifiedColoring:
    """One colour per perfect matching, fresh colours elsewhere: m - kn/2 + k colours."""
    ms = [set(x) for x in matchings]
    failures = []
    if g.n < 4:
        failures.append("n>=4")
    for i, mset in enumerate(ms):
        if not is_matching(g, mset):
            failures.append(f"matching_{i}_not_a_matching")
        elif 2 * len(mset) != g.n:
            failures.append(f"matching_{i}_not_perfect")
    for i, j in combinations(range(len(ms)), 2):
        if ms[i] & ms[j]:
            failures.append(f"matchings_{i}_{j}_not_disjoint")
    union = set().union(*ms) if ms else set()
    rest = Graph(g.n, [e for i, e in enumerate(g.edges) if i not in union])
    if not is_connected(rest) or any(not a for a in rest.adj):
        failures.append("remainder_not_connected_spanning")
    if failures:
        raise HypothesisError("disjoint-matchings hypothesis fails: " + ", ".join(failures), failures)
    colours = []
    nxt = len(ms) + 1
    owner = {e: i + 1 for i, mset in enumerate(ms) for e in mset}
    for e in range(g.m):
        if e in owner:
            colours.append(owner[e])
        else:
            colours.append(nxt)
            nxt += 1
    k = len(ms)
    return certify(g, colours, g.m - k * g.n // 2 + k, Theorem.DISJOINT_MATCHINGS)
