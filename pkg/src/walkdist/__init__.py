"""Walk-based distances on weighted multigraphs.

A family of graph metrics built from weighted walk counts: the walk
distances and their logarithmic/plain variants, the short-walk and
long-walk limits, the epsilon-walk family with its tuned scale, forest
and logarithmic forest distances, and the classical resistance and
shortest-path metrics they interpolate between. Closed forms are
cross-checked by brute-force walk enumeration (walkdist.oracle) and by
formula-equivalence and limit suites (walkdist.verify).
"""

from .errors import (ConvergenceError, DisconnectedGraphError, DivergenceError,
                     EdgeListParseError, EnumerationBudgetError, GraphInputError,
                     IllConditionedError, NumericalError)
from .ewalk import (ThetaSchedule, epsilon_transform, ewalk_distance,
                    ewalk_limit_sweep, long_ewalk_distance, theta_infinity,
                    theta_schedule_for)
from .graph import (DisconnectedGraphWarning, EdgeRecord, LabeledMatrix,
                    WeightedMultigraph, as_adjacency, as_laplacian,
                    build_adjacency, cycle_graph, from_adjacency, laplacian,
                    map_edge_weights, para_laplacian, parse_edge_list,
                    path_graph, require_connected, separates,
                    serialize_edge_list)
from .limits import (GInverse, HittingWeights, SweepPoint, commute_cycle_matrix,
                     commute_cycle_weight, hitting_weight, hitting_weight_matrix,
                     laplacian_ginverse, limit_sweep, long_walk_all_formulas,
                     long_walk_distance, resistance_all_formulas,
                     resistance_distance, shortest_path_matrix,
                     weighted_shortest_path_matrix)
from .oracle import (CheckReport, TruncationBound, WalkRecord, check_geodetic,
                     check_metric, check_psd_centered, check_transition,
                     enumerate_avoiding_cycles, enumerate_commute_cycle_weight,
                     enumerate_hitting_weight, enumerate_walk_weight, iter_walks,
                     separates_by_enumeration, walk_weights_by_length,
                     walk_weights_by_powers)
from .spectral import SpectralData, perron, submatrix_spectral_radius
from .transforms import (BalanceGraph, balance_graph, general_balance,
                         similarity_transform)
from .verify import Assertion, SuiteReport, run_suite, suite_names
from .walk import (DistanceMatrix, ParamPoint, ProximityMatrix, forest_distance,
                   gap_distance, log_forest_distance, log_forest_proximity,
                   plain_walk_distance, proximity_to_distance, walk_distance,
                   walk_scale, walk_weight_matrix)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "GraphInputError", "EdgeListParseError", "DisconnectedGraphError",
    "NumericalError", "DivergenceError", "IllConditionedError",
    "ConvergenceError", "EnumerationBudgetError",
    # graph
    "EdgeRecord", "WeightedMultigraph", "LabeledMatrix",
    "DisconnectedGraphWarning", "parse_edge_list", "serialize_edge_list",
    "from_adjacency", "as_adjacency", "build_adjacency", "laplacian",
    "as_laplacian", "para_laplacian", "map_edge_weights", "separates",
    "require_connected", "path_graph", "cycle_graph",
    # spectral
    "SpectralData", "perron", "submatrix_spectral_radius",
    # walk family
    "ParamPoint", "ProximityMatrix", "DistanceMatrix", "walk_scale",
    "walk_weight_matrix", "proximity_to_distance", "gap_distance",
    "walk_distance", "plain_walk_distance", "forest_distance",
    "log_forest_distance", "log_forest_proximity",
    # limits
    "shortest_path_matrix", "weighted_shortest_path_matrix", "HittingWeights",
    "hitting_weight", "hitting_weight_matrix", "commute_cycle_weight",
    "commute_cycle_matrix", "long_walk_distance", "long_walk_all_formulas",
    "GInverse", "laplacian_ginverse", "resistance_distance",
    "resistance_all_formulas", "SweepPoint", "limit_sweep",
    # e-walk
    "ThetaSchedule", "epsilon_transform", "theta_infinity",
    "theta_schedule_for", "ewalk_distance", "long_ewalk_distance",
    "ewalk_limit_sweep",
    # transforms
    "BalanceGraph", "balance_graph", "general_balance", "similarity_transform",
    # oracle
    "WalkRecord", "TruncationBound", "CheckReport", "iter_walks",
    "walk_weights_by_length", "walk_weights_by_powers", "enumerate_walk_weight",
    "enumerate_hitting_weight", "enumerate_commute_cycle_weight",
    "enumerate_avoiding_cycles", "check_metric", "check_geodetic",
    "check_transition", "check_psd_centered", "separates_by_enumeration",
    # verify
    "Assertion", "SuiteReport", "run_suite", "suite_names",
]
