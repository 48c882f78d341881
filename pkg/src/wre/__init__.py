"""Worst-case robustness evaluation for complex networks.

The package walks the full pipeline: build or load a graph, score nodes
under many centrality metrics, simulate the matching removal attacks,
stack the curves into the most destructive envelope, score how rational
that envelope is, and package corpora of (graph, envelope) pairs for
downstream curve predictors.
"""

from .graph import (
    Graph,
    LoadReport,
    load_edge_list,
    save_edge_list,
    save_relabel_map,
    component_sizes,
    gcc_relative_size,
    largest_component_nodes,
    induced_subgraph,
    sample_connected_subgraph,
)
from .generators import MODELS, GeneratorConfig, generate
from .centrality import (
    METRICS,
    STANDARD_STRATEGY_SET,
    EXTENDED_STRATEGY_SET,
    CentralityScores,
    Ranking,
    ConvergenceError,
    compute_centrality,
    cycle_ratio,
    rank,
    scores_to_csv,
)
from .attack import (
    AttackCurve,
    CurveRecord,
    attack_by_strategy,
    curve_to_csv,
    naive_curve_oracle,
    read_curve_csv,
    simulate_removal,
    write_curve_csv,
)
from .mda import (
    MDACurve,
    stack,
    destruction,
    worst_robustness,
    decompose,
    mda_to_csv,
    read_mda_csv,
)
from .rationality import (
    MRReport,
    build_assignment,
    optimize_and_score,
    mr_experiment,
    report_to_csv,
)
from .filtering import clamp, enforce_monotone, apply_filter
from . import dataset

__version__ = "0.1.0"

__all__ = [
    "Graph", "LoadReport", "load_edge_list", "save_edge_list",
    "save_relabel_map", "component_sizes", "gcc_relative_size",
    "largest_component_nodes", "induced_subgraph", "sample_connected_subgraph",
    "MODELS", "GeneratorConfig", "generate",
    "METRICS", "STANDARD_STRATEGY_SET", "EXTENDED_STRATEGY_SET",
    "CentralityScores", "Ranking", "ConvergenceError",
    "compute_centrality", "cycle_ratio", "rank", "scores_to_csv",
    "AttackCurve", "CurveRecord", "attack_by_strategy", "curve_to_csv",
    "naive_curve_oracle", "read_curve_csv", "simulate_removal",
    "write_curve_csv",
    "MDACurve", "stack", "destruction", "worst_robustness", "decompose",
    "mda_to_csv", "read_mda_csv",
    "MRReport", "build_assignment", "optimize_and_score", "mr_experiment",
    "report_to_csv",
    "clamp", "enforce_monotone", "apply_filter",
    "dataset",
    "__version__",
]
