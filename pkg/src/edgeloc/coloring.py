"""Edge colorings, edge color codes and the edge-locating verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .exceptions import ColoringError
from .graph import Graph, check_graph

ColorCode = tuple  # entry i-1 is the distance from a vertex to colour class i


@dataclass(frozen=True)
class EdgeColoring:
    """Assignment edge id -> colour in ``1..k``; every class must be nonempty."""

    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if self.k < 1:
            raise ColoringError("k must be positive")
        bad = [c for c in self.assignment if not 1 <= c <= self.k]
        if bad:
            raise ColoringError(f"colour {bad[0]} outside 1..{self.k}")
        empty = sorted(set(range(1, self.k + 1)) - set(self.assignment))
        if empty:
            raise ColoringError(f"empty colour class(es) {empty}; use normalize() to renumber")

    @classmethod
    def normalize(cls, assignment: Iterable[int]) -> "EdgeColoring":
        """Renumber the used colours to ``1..k`` keeping their relative order."""
        assignment = list(assignment)
        ranks = {c: i + 1 for i, c in enumerate(sorted(set(assignment)))}
        return cls(len(ranks), tuple(ranks[c] for c in assignment))

    def classes(self) -> list[list[int]]:
        """Edge ids per colour; index 0 holds class 1."""
        out: list[list[int]] = [[] for _ in range(self.k)]
        for e, c in enumerate(self.assignment):
            out[c - 1].append(e)
        return out

    def permute(self, perm: Sequence[int]) -> "EdgeColoring":
        """Recolour with ``perm[c-1]`` replacing colour ``c``."""
        return EdgeColoring(self.k, tuple(perm[c - 1] for c in self.assignment))

    def __len__(self):
        return len(self.assignment)


@dataclass(frozen=True)
class ProperViolation:
    edge_a: int
    edge_b: int
    vertex: int

    def to_dict(self):
        return {"type": "proper", "edge_a": self.edge_a, "edge_b": self.edge_b, "vertex": self.vertex}


@dataclass(frozen=True)
class CodeCollision:
    u: int
    v: int
    code: ColorCode

    def to_dict(self):
        return {"type": "code_collision", "u": self.u, "v": self.v, "code": list(self.code)}


Violation = Union[ProperViolation, CodeCollision]


@dataclass
class VerificationReport:
    passed: bool
    violations: list = field(default_factory=list)
    codes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
            "codes": [list(c) for c in self.codes],
        }


def _edge(g: Graph, e) -> tuple[int, int]:
    if isinstance(e, int):
        if not 0 <= e < g.m:
            raise IndexError(f"edge id {e} out of range")
        return g.edges[e]
    u, v = e
    if not g.has_edge(u, v):
        raise IndexError(f"({u}, {v}) is not an edge")
    return (u, v)


def vertex_edge_distance(g: Graph, v: int, e) -> int:
    """``min(d(v, x), d(v, y))`` for ``e = xy``; ``e`` is an edge id or a pair."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    x, y = _edge(g, e)
    d = g.distances[v]
    return min(d[x], d[y])


def edge_edge_distance(g: Graph, e1, e2) -> int:
    a1, a2 = _edge(g, e1)
    b1, b2 = _edge(g, e2)
    d = g.distances
    return min(d[a1][b1], d[a1][b2], d[a2][b1], d[a2][b2])


def _check_total(g: Graph, c: EdgeColoring) -> None:
    if len(c.assignment) != g.m:
        raise ColoringError(f"coloring covers {len(c.assignment)} edges, graph has {g.m}")


def color_code(g: Graph, c: EdgeColoring, v: int) -> ColorCode:
    _check_total(g, c)
    d = g.distances[v]
    code = [None] * c.k
    for e, col in enumerate(c.assignment):
        x, y = g.edges[e]
        dist = d[x] if d[x] < d[y] else d[y]
        cur = code[col - 1]
        if cur is None or dist < cur:
            code[col - 1] = dist
    if any(x is None for x in code):
        raise ColoringError("empty colour class")
    return tuple(int(x) for x in code)


def incident_color_set(g: Graph, c: EdgeColoring, v: int) -> frozenset[int]:
    _check_total(g, c)
    return frozenset(c.assignment[e] for e in g.incident[v])


def proper_violations(g: Graph, c: EdgeColoring) -> list[ProperViolation]:
    _check_total(g, c)
    out = []
    for v in range(g.n):
        inc = g.incident[v]
        for i, a in enumerate(inc):
            for b in inc[i + 1:]:
                if c.assignment[a] == c.assignment[b]:
                    out.append(ProperViolation(a, b, v))
    return out


def is_proper_edge_coloring(g: Graph, c: EdgeColoring) -> tuple[bool, list[ProperViolation]]:
    viol = proper_violations(g, c)
    return not viol, viol


def verify_elc(g: Graph, c: EdgeColoring) -> VerificationReport:
    """Check properness and pairwise-distinct codes; lists every violating pair."""
    g = check_graph(g)
    _check_total(g, c)
    violations: list = proper_violations(g, c)
    codes = [color_code(g, c, v) for v in range(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if codes[u] == codes[v]:
                violations.append(CodeCollision(u, v, codes[u]))
    return VerificationReport(not violations, violations, codes)


def is_edge_locating(g: Graph, c: EdgeColoring) -> bool:
    """Hashed fast path; must agree with :func:`verify_elc`."""
    if proper_violations(g, c):
        return False
    codes = {color_code(g, c, v) for v in range(g.n)}
    return len(codes) == g.n


# --------------------------------------------------------------------------
# JSON interchange


def coloring_to_json(g: Graph, c: EdgeColoring) -> dict:
    _check_total(g, c)
    return {"k": c.k, "edges": [[u, v, col] for (u, v), col in zip(g.edges, c.assignment)]}


def coloring_from_json(g: Graph, data: dict | str, normalize: bool = False) -> EdgeColoring:
    """Match ``{"k": int, "edges": [[u, v, colour], ...]}`` to ``g`` by endpoint pair."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        rows = data["edges"]
        k = int(data["k"])
    except (KeyError, TypeError, ValueError):
        raise ColoringError("coloring JSON needs 'k' and 'edges'") from None
    assignment: list[int | None] = [None] * g.m
    for row in rows:
        if len(row) != 3:
            raise ColoringError(f"edge row must be [u, v, colour], got {row}")
        u, v, col = (int(x) for x in row)
        if not g.has_edge(u, v):
            raise ColoringError(f"({u}, {v}) is not an edge of the graph")
        e = g.edge_id(u, v)
        if assignment[e] is not None:
            raise ColoringError(f"edge ({u}, {v}) coloured twice")
        assignment[e] = col
    missing = [g.edges[e] for e, col in enumerate(assignment) if col is None]
    if missing:
        raise ColoringError(f"coloring misses edge(s) {missing}")
    if normalize:
        return EdgeColoring.normalize(assignment)
    return EdgeColoring(k, tuple(assignment))
