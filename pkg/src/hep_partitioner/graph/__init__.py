"""
Graph ingestion module.

Reads binary edge lists in two sequential passes: degree counting, then
building the pruned CSR while spilling edges between two high-degree vertices
to disk. Also estimates the NE++ memory footprint and plans tau for a budget.
"""

from .csr import build_pruned_csr
from .degrees import classify_vertices, compute_degrees, high_degree_mask
from .edge_io import (
    ArrayEdgeSource,
    BinaryEdgeFile,
    EdgeSource,
    convert_text_edge_list,
    write_edge_list,
)
from .models import (
    DegreeStats,
    FootprintRow,
    H2HSpill,
    HighDegreeSet,
    MemoryEstimate,
    PrunedCSR,
    TauPlan,
    id_dtype,
)
from .planner import estimate_memory, estimate_memory_breakdown, low_degree_volume, plan_tau

__all__ = [
    "build_pruned_csr",
    "classify_vertices",
    "compute_degrees",
    "high_degree_mask",
    "ArrayEdgeSource",
    "BinaryEdgeFile",
    "EdgeSource",
    "convert_text_edge_list",
    "write_edge_list",
    "DegreeStats",
    "FootprintRow",
    "H2HSpill",
    "HighDegreeSet",
    "MemoryEstimate",
    "PrunedCSR",
    "TauPlan",
    "id_dtype",
    "estimate_memory",
    "estimate_memory_breakdown",
    "low_degree_volume",
    "plan_tau",
]
