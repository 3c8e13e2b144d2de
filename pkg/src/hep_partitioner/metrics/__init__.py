"""
Partition quality metrics, exactly-once validation and diagnostic reports.
"""

from .calculator import (
    cover_counts,
    edge_balance,
    partition_vertex_sets,
    quality_metrics,
    replica_counts,
    replication_factor,
    rf_from_cover,
    validate,
    vertex_balance,
    vertex_balance_from_counts,
)
from .diagnostics import core_secondary_degrees, degree_bucket_report
from .models import (
    CoreSecondaryDegrees,
    DegreeBucket,
    MemoryReport,
    PartitionReport,
    QualityMetrics,
    ValidationReport,
)

__all__ = [
    "cover_counts",
    "edge_balance",
    "partition_vertex_sets",
    "quality_metrics",
    "replica_counts",
    "replication_factor",
    "rf_from_cover",
    "validate",
    "vertex_balance",
    "vertex_balance_from_counts",
    "core_secondary_degrees",
    "degree_bucket_report",
    "CoreSecondaryDegrees",
    "DegreeBucket",
    "MemoryReport",
    "PartitionReport",
    "QualityMetrics",
    "ValidationReport",
]
