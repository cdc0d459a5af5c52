"""Exact edge-locating chromatic number by pruned backtracking.

For each candidate ``k`` (ascending, from :func:`lower_bound`) the search
colours edges in a fixed DFS order rooted at a maximum-degree vertex ``v0``.
Pruning rules:

* properness, with forward checking on the not-yet-coloured neighbours;
* every class must end nonempty (unused colours <= remaining edges);
* colour symmetry: ``v0``'s edges are fixed to ``1..deg(v0)`` and a fresh
  colour is only ever the smallest unused one;
* code finality: once every edge within distance ``r`` of ``u`` is coloured,
  coordinates with value ``<= r + 1`` are exact. A vertex whose coordinates
  are all exact has a final code; two equal final codes are a dead end;
* on diameter-1 graphs, two vertices with all incident edges coloured and
  equal incident colour sets are a dead end.

Feasibility is not assumed monotone in ``k``; each ``k`` is searched on its own.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .coloring import EdgeColoring, verify_elc
from .graph import Graph, check_graph

OPTIMAL = "optimal"
FEASIBLE_ONLY = "feasible_only"
INFEASIBLE = "infeasible_at_k"
BUDGET_EXHAUSTED = "budget_exhausted"

_FAR = 1 << 20


def _default_time_budget() -> float:
    return float(os.environ.get("ELC_BUDGET_SECS", 300.0))


@dataclass
class SolveOptions:
    node_budget: int = 10**8
    time_budget: float = field(default_factory=_default_time_budget)
    workers: int = 1
    deterministic: bool = True
    lower_bound: int | None = None
    upper_bound: int | None = None

    def __post_init__(self):
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        for key, val in other.prunes.items():
            self.prunes[key] = self.prunes.get(key, 0) + val


@dataclass
class SolveResult:
    status: str
    k: int | None
    certificate: EdgeColoring | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    exhausted_k: int | None = None
    bracket: tuple[int, int] | None = None
    proofs: dict = field(default_factory=dict)  # k -> "lower_bound" | "search"

    def to_dict(self, g: Graph | None = None) -> dict:
        out = {
            "status": self.status,
            "k": self.k,
            "exhausted_k": self.exhausted_k,
            "bracket": list(self.bracket) if self.bracket else None,
            "proofs": {str(k): v for k, v in sorted(self.proofs.items())},
            "stats": asdict(self.stats),
            "certificate": None,
        }
        if self.certificate is not None:
            if g is not None:
                out["certificate"] = {
                    "k": self.certificate.k,
                    "edges": [[u, v, c] for (u, v), c in zip(g.edges, self.certificate.assignment)],
                }
            else:
                out["certificate"] = {"k": self.certificate.k, "assignment": list(self.certificate.assignment)}
        return out


class _Budget(Exception):
    pass



def search_order(g: Graph) -> tuple[int, list[int]]:
    """(v0, edge ids in search order): DFS preorder from the first max-degree
    vertex, each visited vertex contributing its unlisted edges by neighbour."""
    deg = [len(a) for a in g.adj]
    v0 = deg.index(max(deg))
    listed = [False] * g.m
    seen = [False] * g.n
    order: list[int] = []
    stack = [v0]
    while stack:
        v = stack.pop()
        if seen[v]:
            continue
        seen[v] = True
        for w in g.adj[v]:
            e = g.edge_id(v, w)
            if not listed[e]:
                listed[e] = True
                order.append(e)
        stack.extend(w for w in reversed(g.adj[v]) if not seen[w])
    return v0, order


class _Search:
    """Backtracking search for an edge-locating colouring with exactly k classes."""

    def __init__(self, g: Graph, k: int, node_budget: int, deadline: float):
        self.g = g
        self.k = k
        self.node_budget = node_budget
        self.deadline = deadline
        self.stats = SearchStats()
        n, m = g.n, g.m
        self.v0, self.order = search_order(g)
        self.deg0 = len(g.adj[self.v0])
        self.ends = [g.edges[e] for e in self.order]
        dist = g.distances
        self.D = [[int(min(dist[u][a], dist[u][b])) for (a, b) in self.ends] for u in range(n)]
        pos = {e: p for p, e in enumerate(self.order)}
        self.later = []
        for p, (a, b) in enumerate(self.ends):
            nb = {pos[e] for e in g.incident[a] + g.incident[b]} - {p}
            self.later.append(sorted(q for q in nb if q > p))
        # events[t]: vertices whose complete-ball radius grows once t edges are coloured
        self.events: list[list[tuple[int, int]]] = [[] for _ in range(m + 1)]
        for u in range(n):
            best: dict[int, int] = {}
            for r in range(max(self.D[u], default=0) + 1):
                t = 1 + max((p for p in range(m) if self.D[u][p] <= r), default=-1)
                best[t] = r
            for t, r in best.items():
                self.events[t].append((u, r))
        self.diam1 = all(d <= 1 for row in dist for d in row)
        self.full = ((1 << (k + 1)) - 1) ^ 1

    # -- state -----------------------------------------------------------

    def _reset(self):
        n, k = self.g.n, self.k
        self.col = [0] * self.g.m
        self.used = [0] * n
        self.cnt = [0] * (k + 1)
        self.ncol = 0
        self.dm = [[_FAR] * (k + 1) for _ in range(n)]
        self.R = [-1] * n
        self.final = [False] * n
        self.finals: dict[tuple, int] = {}
        self.incsets: dict[int, int] = {}
        self.trail: list = []

    def _prune(self, reason: str) -> bool:
        self.stats.prunes[reason] = self.stats.prunes.get(reason, 0) + 1
        return False

    def _assign(self, p: int, c: int) -> bool:
        """Colour edge at position p with c; False when a pruning rule fires.

        Always leaves a trail mark so :meth:`_undo` restores state."""
        trail = self.trail
        trail.append(None)
        a, b = self.ends[p]
        bit = 1 << c
        self.col[p] = c
        self.used[a] |= bit
        self.used[b] |= bit
        if self.cnt[c] == 0:
            self.ncol += 1
        self.cnt[c] += 1
        trail.append(("edge", p, c))
        k = self.k
        R, dm, final = self.R, self.dm, self.final
        cand = []
        for u in range(self.g.n):
            d = self.D[u][p]
            row = dm[u]
            if d < row[c]:
                trail.append(("dm", u, c, row[c]))
                row[c] = d
                if not final[u] and d <= R[u] + 1:
                    cand.append(u)
        t = p + 1
        for u, r in self.events[t]:
            old = R[u]
            trail.append(("R", u, old))
            R[u] = r
            if not final[u]:
                cand.append(u)
            if old < 0 and self.diam1:
                s = self.used[u]
                if s in self.incsets:
                    return self._prune("incident_set")
                self.incsets[s] = u
                trail.append(("inc", s))
        for u in cand:
            if final[u]:
                continue
            lim = R[u] + 1
            row = dm[u]
            if all(row[i] <= lim for i in range(1, k + 1)):
                code = tuple(row[1:])
                if code in self.finals:
                    return self._prune("code_collision")
                self.finals[code] = u
                final[u] = True
                trail.append(("final", u, code))
        if k - self.ncol > self.g.m - t:
            return self._prune("empty_class")
        used = self.used
        full = self.full
        for q in self.later[p]:
            x, y = self.ends[q]
            if (used[x] | used[y]) & full == full:
                return self._prune("forward_check")
        return True

    def _undo(self):
        trail = self.trail
        while True:
            item = trail.pop()
            if item is None:
                return
            tag = item[0]
            if tag == "dm":
                self.dm[item[1]][item[2]] = item[3]
            elif tag == "R":
                self.R[item[1]] = item[2]
            elif tag == "final":
                self.final[item[1]] = False
                del self.finals[item[2]]
            elif tag == "inc":
                del self.incsets[item[1]]
            else:
                _, p, c = item
                a, b = self.ends[p]
                mask = ~(1 << c)
                self.used[a] &= mask
                self.used[b] &= mask
                self.cnt[c] -= 1
                if self.cnt[c] == 0:
                    self.ncol -= 1
                self.col[p] = 0

    def _tick(self):
        self.stats.nodes += 1
        if self.stats.nodes > self.node_budget:
            raise _Budget
        if self.stats.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Budget

    # -- driving ---------------------------------------------------------

    def _start(self) -> bool:
        """Reset and place the fixed colours on v0's edges."""
        self._reset()
        if self.k < self.deg0:
            return self._prune("degree")
        for p in range(self.deg0):
            if not self._assign(p, p + 1):
                return False
        return True

    def _choices(self, p: int) -> list[int]:
        a, b = self.ends[p]
        busy = self.used[a] | self.used[b]
        top = min(self.k, self.ncol + 1)
        return [c for c in range(1, top + 1) if not busy >> c & 1]

    def _dfs(self, p: int) -> bool:
        if p == self.g.m:
            return True
        for c in self._choices(p):
            self._tick()
            if self._assign(p, c) and self._dfs(p + 1):
                return True
            self._undo()
        return False

    def _certificate(self) -> EdgeColoring:
        assignment = [0] * self.g.m
        for p, e in enumerate(self.order):
            assignment[e] = self.col[p]
        return EdgeColoring(self.k, tuple(assignment))

    def run(self) -> tuple[str, EdgeColoring | None]:
        """Sequential search: (status, certificate)."""
        t0 = time.monotonic()
        try:
            ok = self._start() and self._dfs(self.deg0)
        except _Budget:
            return BUDGET_EXHAUSTED, None
        finally:
            self.stats.wall_time += time.monotonic() - t0
        if ok:
            return FEASIBLE_ONLY, self._certificate()
        return INFEASIBLE, None

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """Surviving colour prefixes for the first ``depth`` free edges."""
        out: list[tuple[int, ...]] = []
        if not self._start():
            return out
        stop = min(self.g.m, self.deg0 + depth)

        def rec(p, acc):
            if p == stop:
                out.append(tuple(acc))
                return
            for c in self._choices(p):
                if self._assign(p, c):
                    acc.append(c)
                    rec(p + 1, acc)
                    acc.pop()
                self._undo()

        rec(self.deg0, [])
        return out

    def run_prefix(self, prefix: tuple[int, ...]) -> tuple[str, EdgeColoring | None]:
        t0 = time.monotonic()
        try:
            ok = self._start()
            p = self.deg0
            for c in prefix:
                ok = ok and self._assign(p, c)
                p += 1
            ok = ok and self._dfs(p)
        except _Budget:
            return BUDGET_EXHAUSTED, None
        finally:
            self.stats.wall_time += time.monotonic() - t0
        if ok:
            return FEASIBLE_ONLY, self._certificate()
        return INFEASIBLE, None


def _prefix_task(args):
    g, k, prefix, node_budget, deadline = args
    s = _Search(g, k, node_budget, deadline)
    status, cert = s.run_prefix(prefix)
    return status, cert, s.stats


def _parallel_search(g: Graph, k: int, opts: SolveOptions, deadline: float):
    probe = _Search(g, k, opts.node_budget, deadline)
    depth = 1
    prefixes = probe.prefixes(depth)
    while 0 < len(prefixes) < 4 * opts.workers and probe.deg0 + depth < g.m:
        depth += 1
        prefixes = probe.prefixes(depth)
    stats = SearchStats()
    if not prefixes:
        stats.merge(probe.stats)
        return INFEASIBLE, None, stats
    tasks = [(g, k, pre, opts.node_budget, deadline) for pre in prefixes]
    statuses = []
    with ProcessPoolExecutor(max_workers=opts.workers) as pool:
        futures = [pool.submit(_prefix_task, t) for t in tasks]
        if opts.deterministic:
            # canonical order: the first prefix (in DFS order) with a solution wins
            for fut in futures:
                status, cert, st = fut.result()
                stats.merge(st)
                statuses.append(status)
                if status == FEASIBLE_ONLY and all(s == INFEASIBLE for s in statuses[:-1]):
                    for rest in futures:
                        rest.cancel()
                    return FEASIBLE_ONLY, cert, stats
                if status == BUDGET_EXHAUSTED:
                    for rest in futures:
                        rest.cancel()
                    return BUDGET_EXHAUSTED, None, stats
        else:
            from concurrent.futures import as_completed

            for fut in as_completed(futures):
                status, cert, st = fut.result()
                stats.merge(st)
                statuses.append(status)
                if status == FEASIBLE_ONLY:
                    for rest in futures:
                        rest.cancel()
                    return FEASIBLE_ONLY, cert, stats
    if any(s == BUDGET_EXHAUSTED for s in statuses):
        return BUDGET_EXHAUSTED, None, stats
    return INFEASIBLE, None, stats


def _search_k(g: Graph, k: int, opts: SolveOptions, deadline: float, node_budget: int):
    if opts.workers > 1:
        sub = SolveOptions(node_budget=node_budget, time_budget=opts.time_budget,
                           workers=opts.workers, deterministic=opts.deterministic)
        return _parallel_search(g, k, sub, deadline)
    s = _Search(g, k, node_budget, deadline)
    status, cert = s.run()
    return status, cert, s.stats


def _verified(g: Graph, cert: EdgeColoring) -> EdgeColoring:
    report = verify_elc(g, cert)
    if not report.passed:
        raise RuntimeError(f"solver produced an invalid certificate: {report.violations[:3]}")
    return cert


def feasible(g: Graph, k: int, opts: SolveOptions | None = None) -> SolveResult:
    """Decide whether an edge-locating colouring with exactly ``k`` classes exists.

    Status is ``feasible_only`` (certificate attached), ``infeasible_at_k``
    (proven) or ``budget_exhausted``.
    """
    g = check_graph(g)
    if k < 1:
        raise ValueError("k must be positive")
    opts = opts or SolveOptions()
    t0 = time.monotonic()
    status, cert, stats = _search_k(g, k, opts, t0 + opts.time_budget, opts.node_budget)
    stats.wall_time = time.monotonic() - t0
    if cert is not None:
        cert = _verified(g, cert)
    return SolveResult(status, k, cert, stats,
                       exhausted_k=k if status == INFEASIBLE else None,
                       proofs={k: "search"} if status == INFEASIBLE else {})


def lower_bound(g: Graph) -> int:
    """max(2, Δ, χ' (exact when m <= 20), Δ+1 if two vertices have degree Δ).

    Two vertices of degree Δ in a Δ-colouring both see every colour and so
    share the all-zero code.
    """
    from .oracles import chromatic_index_exact

    g = check_graph(g)
    delta = g.max_degree
    best = max(2, delta)
    if g.m <= 20:
        best = max(best, chromatic_index_exact(g))
    if sum(1 for a in g.adj if len(a) == delta) >= 2:
        best = max(best, delta + 1)
    return best


def elc_number(g: Graph, opts: SolveOptions | None = None) -> SolveResult:
    """Ascending search over k; ``optimal`` once a certificate at k is found and
    every smaller k is excluded by the lower bound or an exhausted search."""
    g = check_graph(g)
    opts = opts or SolveOptions()
    t0 = time.monotonic()
    deadline = t0 + opts.time_budget
    computed_lb = lower_bound(g)
    start = computed_lb if opts.lower_bound is None else max(computed_lb, opts.lower_bound)
    upper = g.m if opts.upper_bound is None else min(g.m, opts.upper_bound)
    proofs = {k: "lower_bound" for k in range(1, computed_lb)}
    stats = SearchStats()
    for k in range(start, upper + 1):
        remaining = opts.node_budget - stats.nodes
        if remaining <= 0 or time.monotonic() > deadline:
            stats.wall_time = time.monotonic() - t0
            return SolveResult(BUDGET_EXHAUSTED, None, None, stats,
                               exhausted_k=_exhausted(proofs), bracket=(k, g.m), proofs=proofs)
        status, cert, st = _search_k(g, k, opts, deadline, remaining)
        stats.merge(st)
        if status == FEASIBLE_ONLY:
            cert = _verified(g, cert)
            stats.wall_time = time.monotonic() - t0
            complete = all(proofs.get(j) for j in range(1, k))
            return SolveResult(OPTIMAL if complete else FEASIBLE_ONLY, k, cert, stats,
                               exhausted_k=k - 1 if complete else _exhausted(proofs),
                               bracket=(k, k) if complete else (start, k), proofs=proofs)
        if status == BUDGET_EXHAUSTED:
            stats.wall_time = time.monotonic() - t0
            return SolveResult(BUDGET_EXHAUSTED, None, None, stats,
                               exhausted_k=_exhausted(proofs), bracket=(k, g.m), proofs=proofs)
        proofs[k] = "search"
    stats.wall_time = time.monotonic() - t0
    # only reachable with an upper-bound override below the optimum
    return SolveResult(INFEASIBLE, upper, None, stats, exhausted_k=_exhausted(proofs),
                       bracket=(upper + 1, g.m), proofs=proofs)


def _exhausted(proofs: dict) -> int | None:
    k = 0
    while proofs.get(k + 1):
        k += 1
    return k or None
