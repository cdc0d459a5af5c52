"""scikit-learn style wrapper around the solver.

``fit`` takes one graph (``Graph``, networkx graph, or graph6 string) and
finds an optimal edge-locating colouring; ``transform`` returns the vertex
colour codes as an ``(n, k)`` array and ``predict`` the colour of each edge.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .coloring import color_code
from .constructions import construct_coloring
from .graph import FamilySpec, Graph, check_graph, family_graph, parse_graph6
from .solver import OPTIMAL, SolveOptions, elc_number


def as_graph(X) -> Graph:
    """Coerce graph6 strings, family specs (``"family:..."``) and networkx graphs."""
    if isinstance(X, str):
        if ":" in X or X in ("monotonicity_G", "monotonicity_H"):
            return family_graph(FamilySpec.parse(X))
        return parse_graph6(X)
    return check_graph(X)


class EdgeLocatingColoring(BaseEstimator, TransformerMixin):
    """Optimal (or closed-form) edge-locating colouring of a single graph.

    method="solver" runs the exact search; method="construct" uses the
    family construction and therefore needs a family spec string as input.
    """

    def __init__(self, method="solver", node_budget=10**8, time_budget=300.0, workers=1):
        self.method = method
        self.node_budget = node_budget
        self.time_budget = time_budget
        self.workers = workers

    def fit(self, X, y=None):
        if self.method not in ("solver", "construct"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "construct":
            if not isinstance(X, str):
                raise ValueError("method='construct' needs a family spec string")
            cert = construct_coloring(X)
            self.graph_, self.coloring_ = cert.graph, cert.coloring
            self.status_ = "constructed"
        else:
            g = check_graph(as_graph(X))
            opts = SolveOptions(node_budget=self.node_budget, time_budget=self.time_budget,
                                workers=self.workers)
            res = elc_number(g, opts)
            if res.certificate is None:
                raise RuntimeError(f"no colouring found ({res.status})")
            self.graph_, self.coloring_ = g, res.certificate
            self.status_ = res.status
        self.n_colors_ = self.coloring_.k
        self.optimal_ = self.status_ == OPTIMAL
        return self

    def _check_fitted(self):
        if not hasattr(self, "coloring_"):
            raise NotFittedError("call fit() first")

    def transform(self, X=None):
        """Colour codes of the fitted graph, one row per vertex.

        X is accepted for the sklearn calling convention and ignored.
        """
        self._check_fitted()
        g = self.graph_
        return np.array([color_code(g, self.coloring_, v) for v in range(g.n)], dtype=int)

    def predict(self, X=None):
        """Colour of every edge, in the graph's edge order."""
        self._check_fitted()
        return np.array(self.coloring_.assignment, dtype=int)
