"""Optimum cycle means and longest/shortest simple cycle bounds for weighted digraphs."""
from .graph import (
    Component,
    Cycle,
    GraphError,
    ParseError,
    SccDecomposition,
    WeightedDigraph,
    cycle_mean,
    decompose_sccs,
    parse_edge_list,
    serialize_edge_list,
    transform_weights,
)
from .enumeration import (
    EnumerationStatus,
    ExtremalCycles,
    collect_cycles,
    enumerate_simple_cycles,
    extremal_cycles,
)
from .cyclemean import (
    CriticalSubgraph,
    CycleMeanCertificate,
    NoCycleError,
    SolverError,
    critical_subgraph,
    karp_cycle_mean,
    max_cycle_mean,
    min_cycle_mean,
)

from .bounds import (
    BoundReport,
    CriticalStats,
    Interval,
    PathBounds,
    bound_violations,
    evaluate_bounds,
    gap_ratio,
    max_length_bounds,
    max_weight_bounds,
    min_length_bounds,
    min_weight_bounds,
    path_bounds,
    sign_condition,
)
from .estimators import EstimateReport, estimate, heuristic_error
from .weightgen import WeightSpec, assign_weights
from .harness import AnalysisOptions, ComponentRecord, analyze, bench, bound_errors
from .report import emit_report, load_report

__version__ = "0.1.0"
