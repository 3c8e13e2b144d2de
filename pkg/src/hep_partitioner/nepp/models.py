"""
NE++ state and run diagnostics.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np
from pydantic import BaseModel, Field


class ExpansionDiagnostics(BaseModel):
    """Counters collected while expanding partitions."""

    column_entries: int = Field(0, description="Column array length at the start of the run")
    removed_entries: int = Field(0, description="Entries removed by clean-up over the whole run")
    cleaned_per_partition: List[int] = Field(default_factory=list)
    seeds: int = 0
    spilled_assignments: int = 0
    init_exhausted: bool = False
    sealed_reads: int = Field(0, description="Adjacency reads of vertices that were core when a partition completed")
    recount_checks: int = 0

    @property
    def cleaned_fraction(self) -> float:
        if self.column_entries == 0:
            return 0.0
        return self.removed_entries / self.column_entries


@dataclass
class PartitionState:
    """
    Result state of the in-memory phase.

    core is the global core set C. cover[i] records every vertex incident to
    an edge assigned to partition i (the secondary sets, as handed to
    streaming). sizes holds per-partition edge counts.
    """

    core: np.ndarray
    cover: np.ndarray
    sizes: np.ndarray
    capacity: int
    k: int
    current: int = 0
    init_cursor: int = 0
    diagnostics: ExpansionDiagnostics = field(default_factory=ExpansionDiagnostics)

    @property
    def num_vertices(self) -> int:
        return len(self.core)
