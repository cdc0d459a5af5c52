"""Edge-locating colourings of graphs: exact solver, constructions, bounds and oracles."""

from .coloring import (
    CodeCollision,
    EdgeColoring,
    ProperViolation,
    VerificationReport,
    color_code,
    coloring_from_json,
    coloring_to_json,
    edge_edge_distance,
    incident_color_set,
    is_edge_locating,
    is_proper_edge_coloring,
    vertex_edge_distance,
    verify_elc,
)
from .constructions import (
    CertifiedColoring,
    Theorem,
    color_tree_leaves,
    color_tree_support,
    color_via_disjoint_matchings,
    color_via_matching,
    complete_minus_classes,
    construct_coloring,
)
from .exceptions import (
    BudgetError,
    ColoringError,
    ConstructionError,
    DisconnectedGraphError,
    GraphFormatError,
    HypothesisError,
    InvalidFamilyError,
    UnsupportedSizeError,
)
from .graph import (
    FamilySpec,
    Graph,
    check_graph,
    encode_graph6,
    family_graph,
    join_graphs,
    parse_edge_list,
    parse_graph6,
)
from .solver import SolveOptions, SolveResult, elc_number, feasible, lower_bound

__version__ = "0.1.0"
