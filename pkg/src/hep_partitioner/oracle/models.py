"""
Oracle data models.
"""

from typing import List, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

MAX_TINY_EDGES = 16
MAX_TINY_K = 4


class TinyInstance(BaseModel):
    """An instance small enough for exhaustive search."""

    edges: List[Tuple[int, int]] = Field(..., description="Edge list without self-loops")
    k: int = Field(..., ge=1, le=MAX_TINY_K)
    cap: int = Field(..., ge=1, description="Maximum edges per partition")

    @field_validator("edges")
    @classmethod
    def validate_edges(cls, v: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        if len(v) > MAX_TINY_EDGES:
            raise ValueError(f"at most {MAX_TINY_EDGES} edges can be enumerated, got {len(v)}")
        if any(a == b for a, b in v):
            raise ValueError("self-loops are not allowed")
        if any(a < 0 or b < 0 for a, b in v):
            raise ValueError("vertex ids must be non-negative")
        return v

    @model_validator(mode="after")
    def validate_capacity(self) -> "TinyInstance":
        if self.cap * self.k < len(self.edges):
            raise ValueError(f"cap {self.cap} x k {self.k} cannot hold {len(self.edges)} edges")
        return self

    @property
    def num_active_vertices(self) -> int:
        return len({x for e in self.edges for x in e})


class OptimalPartition(BaseModel):
    """Minimum replication factor and one assignment attaining it."""

    replication_factor: float
    replicas: int
    assignment: List[int]
    explored_nodes: int = 0
