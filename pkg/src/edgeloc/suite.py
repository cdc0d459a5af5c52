"""Theorem regression suite driven by the shipped JSON manifest.

Each manifest entry expands (over its ``range`` variables) into cases; a case
runs one check and yields a row ``case_id, theorem_tag, input, expected, got,
status, millis``.  Status is PASS, FAIL, FLAG (a documented bound-vs-exact
tension) or BUDGET.
"""

from __future__ import annotations

import ast
import csv
import io
import itertools
import json
import operator
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import bounds, oracles
from .coloring import coloring_from_json, is_edge_locating
from .constructions import (
    color_tree_leaves,
    color_tree_support,
    color_via_matching,
    complete_matrix,
    complete_minus_classes,
    construct_coloring,
    support_bound,
)
from .exceptions import HypothesisError
from .graph import (
    Graph,
    connected_graphs_by_order,
    connected_graphs_by_size,
    encode_graph6,
    family_graph,
    induced_subgraph,
    join_graphs,
    parse_graph6,
    random_connected_graph,
    random_tree,
)
from .solver import BUDGET_EXHAUSTED, INFEASIBLE, OPTIMAL, SolveOptions, elc_number, feasible

PASS, FAIL, FLAG, BUDGET = "PASS", "FAIL", "FLAG", "BUDGET"
CSV_COLUMNS = ("case_id", "theorem_tag", "input", "expected", "got", "status", "millis")


# --------------------------------------------------------------------------
# tiny arithmetic evaluator for manifest formulas ("n+2 if n==m else max(n,m)+1")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod, ast.Pow: operator.pow}
_CMPS = {ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt,
         ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge}
_FUNCS = {"max": max, "min": min}


def evaluate(expr, env: dict):
    if isinstance(expr, (int, bool)):
        return expr

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
            return node.value
        if isinstance(node, ast.Name):
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = ev(right)
                if not _CMPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, ast.IfExp):
            return ev(node.body) if ev(node.test) else ev(node.orelse)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise ValueError(f"unsupported expression: {ast.dump(node)}")

    return ev(ast.parse(str(expr), mode="eval"))


# --------------------------------------------------------------------------
# manifest


@dataclass(frozen=True)
class TheoremCase:
    case_id: str
    group: str
    theorem: str
    kind: str
    provenance: str
    params: dict  # entry fields with range variables substituted
    env: tuple = ()

    @property
    def input(self) -> str:
        s = self.params
        for key in ("family", "g6", "input"):
            if key in s:
                return str(s[key])
        return self.kind


def load_manifest(path=None) -> list[dict]:
    if path is None:
        text = resources.files("edgeloc").joinpath("data/theorems.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    return data["cases"]


def _subst(value, env):
    if env and isinstance(value, str) and "{" in value:
        out = value.format(**env)
        return int(out) if out.lstrip("-").isdigit() else out
    return value


def expand(entries: list[dict], only: list[str] | None = None, n_max: int | None = None) -> list[TheoremCase]:
    """Expand manifest entries over their ranges; ``only`` matches group, theorem or id prefix."""
    out = []
    for entry in entries:
        if only and not any(o in (entry["group"], entry["theorem"]) or entry["id"].startswith(o) for o in only):
            continue
        ranges = entry.get("range", {})
        names = list(ranges)
        spans = []
        for name in names:
            lo, hi = ranges[name]
            if n_max is not None and name == "n":
                hi = min(hi, n_max)
            spans.append(range(lo, hi + 1))
        for combo in itertools.product(*spans):
            env = dict(zip(names, combo))
            if "where" in entry and not evaluate(entry["where"], env):
                continue
            suffix = "[" + ",".join(f"{k}={v}" for k, v in env.items()) + "]" if env else ""
            for name, expr in entry.get("let", {}).items():
                env[name] = evaluate(expr, env)
            params = {k: _subst(v, env) for k, v in entry.items() if k not in ("range", "where", "let")}
            out.append(TheoremCase(entry["id"] + suffix, entry["group"], entry["theorem"],
                                   entry["kind"], entry.get("provenance", ""), params, tuple(env.items())))
    return out


# --------------------------------------------------------------------------
# case runners; each returns (expected, got, status)


def _graph(params: dict) -> Graph:
    if "family" in params:
        return family_graph(params["family"])
    return parse_graph6(params["g6"])


def _expected(case: TheoremCase):
    return evaluate(case.params["expected"], dict(case.env))


def _solve(case, opts):
    g = _graph(case.params)
    want = _expected(case)
    res = elc_number(g, opts)
    if res.status != OPTIMAL:
        return want, res.status, BUDGET if res.status == BUDGET_EXHAUSTED else FAIL
    return want, res.k, PASS if res.k == want else FAIL


def _infeasible(case, opts):
    g = _graph(case.params)
    k = case.params["k"]
    res = feasible(g, k, opts)
    got = "infeasible" if res.status == INFEASIBLE else res.status
    status = PASS if res.status == INFEASIBLE else (BUDGET if res.status == BUDGET_EXHAUSTED else FAIL)
    return f"infeasible at {k}", got, status


def _construct(case, opts):
    want = _expected(case)
    cert = construct_coloring(case.params["family"])
    return want, cert.coloring.k, PASS if cert.coloring.k == want else FAIL


def _minus_classes(case, opts):
    want = _expected(case)
    cert = complete_minus_classes(int(case.params["order"]), int(case.params["m"]))
    return want, cert.coloring.k, PASS if cert.coloring.k == want else FAIL


def _verify(case, opts):
    g = _graph(case.params)
    col = coloring_from_json(g, case.params["coloring"])
    ok = is_edge_locating(g, col)
    return "edge-locating", "edge-locating" if ok else "not edge-locating", PASS if ok else FAIL


def _matrix(case, opts):
    n = case.params["n"]
    rows = case.params["matrix"]
    alpha = complete_matrix(n)
    got = [[alpha[(i, j)] for j in range(i + 1, n + 1)] for i in range(1, n)]
    want = [row[i:] for i, row in enumerate(rows[:-1], start=1)]
    return "printed matrix", "match" if got == want else "mismatch", PASS if got == want else FAIL


def _subset(case, opts):
    g, h = family_graph(case.params["family"]), family_graph(case.params["superset"])
    ok = g.n == h.n and g.edge_set() < h.edge_set()
    return "E(G) proper subset of E(H)", "yes" if ok else "no", PASS if ok else FAIL


def _bound_vs_exact(case, opts):
    """Lower bound evaluated against the exact value; a violation is a FLAG."""
    g = _graph(case.params)
    which = case.params["bound"]
    res = elc_number(g, opts)
    if res.status != OPTIMAL:
        return "bound <= exact", res.status, BUDGET
    if which == "diameter":
        b = bounds.diameter_lower_bound(g)
        got = f"bound={b} exact={res.k}"
        return "bound <= exact", got, FLAG if b is not None and b > res.k else PASS
    if which == "census":
        c = bounds.degree_census_check(g, res.k)
        got = f"failing degrees at k={res.k}: {c.failures}"
        return "no failing degree", got, FLAG if c.failures else PASS
    raise ValueError(which)


def _bound_tight(case, opts):
    g = _graph(case.params)
    which = case.params["bound"]
    res = elc_number(g, opts)
    if res.status != OPTIMAL:
        return "bound = exact", res.status, BUDGET
    if which == "matching":
        b = bounds.matching_upper_bound(g)
    elif which == "chromatic_index":
        b = oracles.chromatic_index_exact(g, max_edges=40)
    elif which == "dim_e":
        b = bounds.dim_e_upper_bound(g)[oracles.EDGES_RESOLVE_EDGES]["bound"]
    else:
        raise ValueError(which)
    return f"bound = exact = {_expected(case)}", f"bound={b} exact={res.k}", \
        PASS if b == res.k == _expected(case) else FAIL


def _matching_cert(case, opts):
    g = _graph(case.params)
    cert = color_via_matching(g)
    b = bounds.matching_upper_bound(g)
    res = elc_number(g, opts)
    ok = cert.coloring.k == b and (res.status != OPTIMAL or res.k <= b)
    return f"verified, <= {b}", cert.coloring.k, PASS if ok else FAIL


def _general_join(case, opts):
    g = _graph(case.params)
    chk = bounds.general_join_check(g, opts)
    if chk.flags:
        return chk.expected, f"chi(H)={chk.chi_h}; " + "; ".join(chk.flags), FLAG
    if chk.passed is None:
        return chk.expected, f"chi(H)={chk.chi_h}", PASS if chk.chi_h is not None else BUDGET
    return chk.expected, f"chi(H)={chk.chi_h}", PASS if chk.passed else FAIL


# sweeps ----------------------------------------------------------------------


def _sweep_oracle(case, opts):
    bad = []
    graphs = [g for g in connected_graphs_by_size(case.params["max_edges"]) if g.n >= 3]
    for g in graphs:
        res = elc_number(g, opts)
        if res.status != OPTIMAL or res.k != oracles.brute_force_elc(g, max_edges=case.params["max_edges"]):
            bad.append(encode_graph6(g))
    return f"{len(graphs)} agree", f"{len(graphs) - len(bad)} agree", PASS if not bad else FAIL


def _is_size_m_extremal(g: Graph) -> bool:
    degs = sorted(len(a) for a in g.adj)
    if g.n == g.m + 1 and degs[-1] == g.m:
        return True  # star
    if g.m == 3 and g.n == 4 and degs == [1, 1, 2, 2]:
        return True  # P4
    return g.n == g.m and degs == [2] * g.n and g.n in (3, 4)


def _sweep_size_m(case, opts):
    bad = []
    m = case.params["m"]
    graphs = [g for g in connected_graphs_by_size(m) if g.m == m and g.n >= 3]
    for g in graphs:
        k = elc_number(g, opts).k
        if (k == m) != _is_size_m_extremal(g):
            bad.append(encode_graph6(g))
    return "chi_L = m only for P4, C3, C4, S_m", f"{len(graphs)} graphs, {len(bad)} exceptions", \
        PASS if not bad else FAIL


def _sweep_two(case, opts):
    twos = []
    graphs = connected_graphs_by_order(case.params["n_max"], 3)
    for g in graphs:
        if elc_number(g, opts).k == 2:
            twos.append(encode_graph6(g))
    ok = len(twos) == 1 and parse_graph6(twos[0]).m == 2 and parse_graph6(twos[0]).n == 3
    return "only P3", ",".join(twos), PASS if ok else FAIL


def _sweep_join_lower(case, opts):
    rng = random.Random(case.params["seed"])
    bad = 0
    for _ in range(case.params["pairs"]):
        g = random_connected_graph(rng.randint(1, 6), rng)
        h = random_connected_graph(rng.randint(1, 6), rng)
        if bounds.join_lower_bound(g, h) != join_graphs(g, h).max_degree:
            bad += 1
    return "= Δ(G+H)", f"{bad} mismatches", PASS if not bad else FAIL


def _sweep_general_join(case, opts):
    fails, flags = [], []
    for g in connected_graphs_by_order(case.params["order"], case.params["order"]):
        chk = bounds.general_join_check(g, opts)
        if chk.passed is False:
            fails.append(encode_graph6(g))
        if chk.flags:
            flags.append(encode_graph6(g))
    got = f"{len(fails)} failures; extended-reading flags {flags}"
    return "clauses hold", got, PASS if not fails else FAIL


def _tree_corpus(case, opts):
    rng = random.Random(case.params["seed"])
    bad = []
    for i in range(case.params["trees"]):
        t = random_tree(rng.randint(5, 14), rng)
        leaves = sum(1 for a in t.adj if len(a) == 1)
        try:
            c = color_tree_leaves(t)
        except HypothesisError:
            c = None
        if c is not None:
            sub, _ = induced_subgraph(t, [v for v in range(t.n) if len(t.adj[v]) > 1])
            bound = leaves if t.max_degree == leaves else sub.max_degree + leaves
            if c.coloring.k > bound:
                bad.append((i, "leaves"))
        if t.max_degree < leaves:
            s = color_tree_support(t)
            if s.coloring.k > support_bound(t):
                bad.append((i, "support"))
    return "all verify within bound", f"{len(bad)} violations", PASS if not bad else FAIL


def _support_equality(case, opts):
    pmax = case.params["p_max"]
    eq = []
    for p in range(1, pmax + 1):
        for q in range(1, p + 1):
            g = family_graph(f"double_star:{p},{q}")
            leaves = p + q
            if g.max_degree >= leaves:
                continue
            if support_bound(g) == elc_number(g, opts).k:
                eq.append(f"S{p},{q}")
    want = [f"S{p},{p}" for p in range(2, pmax + 1)]
    return ",".join(want), ",".join(eq), PASS if eq == want else FAIL


def _sweep_random_matching(case, opts):
    rng = random.Random(case.params["seed"])
    bad = 0
    for _ in range(case.params["graphs"]):
        g = random_connected_graph(rng.randint(5, 10), rng)
        cert = color_via_matching(g)
        if cert.coloring.k != bounds.matching_upper_bound(g):
            bad += 1
    return "all verify", f"{bad} failures", PASS if not bad else FAIL


def _sweep_sandwich(case, opts):
    bad = []
    graphs = connected_graphs_by_order(case.params["n_max"], 3)
    for g in graphs:
        k = elc_number(g, opts).k
        r = bounds.dim_e_upper_bound(g, max_edges=21)
        chi = r["chromatic_index"]
        upper = max(r[oracles.EDGES_RESOLVE_EDGES]["bound"], r[oracles.EDGES_RESOLVE_VERTICES]["bound"])
        if not chi <= k <= upper:
            bad.append(encode_graph6(g))
    return "chi' <= chi_L <= chi' + dim_E", f"{len(graphs)} graphs, {len(bad)} violations", \
        PASS if not bad else FAIL


def _sweep_distinguishing(case, opts):
    rng = random.Random(case.params["seed"])
    graphs = [g for g in connected_graphs_by_order(case.params["n_max"], 3)]
    graphs += [random_connected_graph(rng.randint(3, 8), rng) for _ in range(case.params["random"])]
    bad = 0
    for g in graphs:
        cert = elc_number(g, opts).certificate
        if not oracles.is_edge_distinguishing(g, cert):
            bad += 1
    return "all distinguishing", f"{len(graphs)} certificates, {bad} failures", PASS if not bad else FAIL


RUNNERS = {
    "solve": _solve,
    "infeasible": _infeasible,
    "construct": _construct,
    "minus_classes": _minus_classes,
    "verify": _verify,
    "matrix": _matrix,
    "subset": _subset,
    "bound_vs_exact": _bound_vs_exact,
    "bound_tight": _bound_tight,
    "matching_certificate": _matching_cert,
    "general_join": _general_join,
    "sweep_oracle": _sweep_oracle,
    "sweep_size_m": _sweep_size_m,
    "sweep_two": _sweep_two,
    "sweep_join_lower": _sweep_join_lower,
    "sweep_general_join": _sweep_general_join,
    "tree_corpus": _tree_corpus,
    "support_equality": _support_equality,
    "sweep_random_matching": _sweep_random_matching,
    "sweep_sandwich": _sweep_sandwich,
    "sweep_distinguishing": _sweep_distinguishing,
}


@dataclass
class CaseResult:
    case: TheoremCase
    expected: str
    got: str
    status: str
    millis: int

    def row(self, deterministic: bool) -> list:
        return [self.case.case_id, self.case.theorem, self.case.input, self.expected, self.got,
                self.status, "" if deterministic else self.millis]


def run_case(case: TheoremCase, opts: SolveOptions) -> CaseResult:
    t0 = time.perf_counter()
    try:
        expected, got, status = RUNNERS[case.kind](case, opts)
    except Exception as exc:  # a crashing case is a failure row, not a crashed suite
        expected, got, status = case.params.get("expected", ""), f"error: {type(exc).__name__}: {exc}", FAIL
    millis = int((time.perf_counter() - t0) * 1000)
    return CaseResult(case, str(expected), str(got), status, millis)


def _run_packed(args):
    return run_case(*args)


def run_suite(cases: list[TheoremCase], opts: SolveOptions, workers: int = 1) -> list[CaseResult]:
    """Run cases, ``workers`` at a time; results come back in manifest order."""
    if workers <= 1 or len(cases) <= 1:
        return [run_case(c, opts) for c in cases]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_packed, [(c, opts) for c in cases]))


def to_csv(results: list[CaseResult], deterministic: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        w.writerow(r.row(deterministic))
    return buf.getvalue()


def summarize(results: list[CaseResult]) -> dict:
    counts = {s: 0 for s in (PASS, FAIL, FLAG, BUDGET)}
    for r in results:
        counts[r.status] += 1
    return counts
