"""
Partition quality and validation report models.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from hep_partitioner.graph.models import MemoryEstimate


class QualityMetrics(BaseModel):
    """Replication and balance of one assignment."""

    replication_factor: float
    edge_balance: float
    vertex_balance: float = Field(..., description="Population std. deviation / mean of per-partition vertex counts")
    sizes: List[int]
    cover_counts: List[int]


class ValidationReport(BaseModel):
    """Outcome of comparing an assignment with its input edge multiset."""

    passed: bool
    expected_edges: int
    assigned_edges: int
    missing: int = 0
    duplicated: int = 0
    alien: int = 0
    invalid_partition: int = 0
    sizes: List[int] = Field(default_factory=list)

    def summary(self) -> str:
        status = "OK" if self.passed else "FAILED"
        return (
            f"{status}: {self.assigned_edges}/{self.expected_edges} edges, "
            f"missing={self.missing} duplicated={self.duplicated} alien={self.alien} "
            f"invalid_partition={self.invalid_partition}"
        )


class DegreeBucket(BaseModel):
    """Mean replication of vertices whose degree lies in [low, high]."""

    low: int
    high: int
    vertices: int
    mean_replication: float


class CoreSecondaryDegrees(BaseModel):
    """Average degree of core vertices against vertices left only in secondary sets."""

    core_vertices: int
    secondary_vertices: int
    core_avg_degree: float
    secondary_avg_degree: float
    mean_degree: float

    @property
    def core_normalized(self) -> float:
        return self.core_avg_degree / self.mean_degree if self.mean_degree else 0.0

    @property
    def secondary_normalized(self) -> float:
        return self.secondary_avg_degree / self.mean_degree if self.mean_degree else 0.0


class MemoryReport(BaseModel):
    """Analytic footprint next to the measured structure sizes."""

    estimate: MemoryEstimate
    estimate_total: int
    measured: Dict[str, int]
    measured_total: int


class PartitionReport(BaseModel):
    """
    Stats document of one partitioning run.

    Everything except `timings` is deterministic for a given input and
    configuration.
    """

    model_config = ConfigDict(ser_json_inf_nan="constants")

    mode: str
    k: int
    tau: Optional[float] = None
    alpha: float
    num_edges: int
    num_vertices: int
    num_active_vertices: int
    num_self_loops: int = 0
    high_degree_vertices: int = 0
    h2h_edges: int = 0
    quality: QualityMetrics
    rf_from_cover: Optional[float] = None
    cleaned_fraction: Optional[float] = None
    cleaned_per_partition: List[int] = Field(default_factory=list)
    fallback_count: int = 0
    init_exhausted: bool = False
    sealed_reads: int = 0
    memory: Optional[MemoryReport] = None
    degree_buckets: List[DegreeBucket] = Field(default_factory=list)
    core_vs_secondary: Optional[CoreSecondaryDegrees] = None
    timings: Dict[str, float] = Field(default_factory=dict)
