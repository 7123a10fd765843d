"""Metric and degree verification for implicit hypercube subgraphs."""

from .graph import (
    Hypercube,
    ImplicitGraph,
    MaterializedGraph,
    OracleGraph,
    edge_count,
    edges,
    materialize,
    read_edge_list,
    write_edge_list,
)
from .layers import (
    LayerMatchingGraph,
    layer_matching_edge_formula,
    layer_matching_graph,
    proposition_bound,
    proposition_edge_floor,
)
from .metrics import (
    antipodal_distances,
    bfs,
    degree_scan,
    diameter_exhaustive,
    diameter_sampled,
    min_degree,
    multi_source_bfs,
    stretch_scan,
    symmetry_check,
    validate_path,
)
from .report import Budgets, Expectations, VerificationReport, run_verification

__all__ = [
    "Budgets", "Expectations", "Hypercube", "ImplicitGraph", "LayerMatchingGraph",
    "MaterializedGraph", "OracleGraph", "VerificationReport", "antipodal_distances", "bfs",
    "degree_scan", "diameter_exhaustive", "diameter_sampled", "edge_count", "edges",
    "layer_matching_edge_formula", "layer_matching_graph", "materialize", "min_degree",
    "multi_source_bfs", "proposition_bound", "proposition_edge_floor", "read_edge_list",
    "run_verification", "stretch_scan", "symmetry_check", "validate_path", "write_edge_list",
]
