"""
Graph data models: degree statistics, high-degree classification, pruned CSR,
the high-to-high spill file, and memory planning reports.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)


def id_dtype(id_bytes: int) -> np.dtype:
    """Little-endian unsigned dtype for vertex ids of the given width."""
    return np.dtype("<u4") if id_bytes == 4 else np.dtype("<u8")


@dataclass
class DegreeStats:
    """
    Exact degree statistics from the first ingestion pass.

    Self-loops are excluded from degrees and num_edges and tallied separately.
    num_vertices is the id-space size (max id + 1); mean_degree is taken over
    active vertices (degree >= 1).
    """

    degrees: np.ndarray
    out_degrees: np.ndarray
    num_vertices: int
    num_active_vertices: int
    num_edges: int
    num_self_loops: int
    mean_degree: float
    histogram: Dict[int, int]
    # Distinct degrees (ascending) and the cumulative adjacency volume of all
    # vertices whose degree is at most that value.
    cutoffs: np.ndarray
    suffix_volume: np.ndarray

    def volume_at_most(self, cutoff: float) -> int:
        """Sum of d(v) over vertices with d(v) <= cutoff."""
        idx = int(np.searchsorted(self.cutoffs, cutoff, side="right"))
        if idx == 0:
            return 0
        return int(self.suffix_volume[idx - 1])

    @property
    def max_degree(self) -> int:
        return int(self.cutoffs[-1]) if len(self.cutoffs) else 0


@dataclass
class HighDegreeSet:
    """Vertices with d(v) > tau * mean_degree, plus their exact degrees."""

    membership: np.ndarray
    tau: float
    threshold_degree: Optional[int]
    side_degrees: Dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.side_degrees)

    def __contains__(self, vertex: int) -> bool:
        return vertex in self.side_degrees


@dataclass
class PrunedCSR:
    """
    CSR over in-memory edges with the adjacency lists of high-degree vertices omitted.

    Each low-degree vertex owns a region of the column array starting at
    index_out[v]: its out-sublist (neighbors v where v was the left endpoint
    in the input) followed by its in-sublist starting at index_in[v]. Valid
    entries of each sublist occupy its prefix; out_size/in_size count them.
    index_out has num_vertices + 1 entries so a region's original length is
    index_out[v + 1] - index_out[v].
    """

    index_out: np.ndarray
    index_in: np.ndarray
    column: np.ndarray
    out_size: np.ndarray
    in_size: np.ndarray
    num_inmem_edges: int

    @property
    def num_vertices(self) -> int:
        return len(self.index_in)

    def out_neighbors(self, v: int) -> np.ndarray:
        start = int(self.index_out[v])
        return self.column[start:start + int(self.out_size[v])]

    def in_neighbors(self, v: int) -> np.ndarray:
        start = int(self.index_in[v])
        return self.column[start:start + int(self.in_size[v])]

    def valid_degree(self, v: int) -> int:
        return int(self.out_size[v]) + int(self.in_size[v])

    def full_degree(self, v: int) -> int:
        """Original degree of a low-degree vertex (0 for high-degree vertices)."""
        return int(self.index_out[v + 1]) - int(self.index_out[v])

    def structure_bytes(self) -> Dict[str, int]:
        """Measured sizes of the CSR arrays."""
        return {
            "index_arrays": int(self.index_out.nbytes + self.index_in.nbytes),
            "column": int(self.column.nbytes),
            "size_fields": int(self.out_size.nbytes + self.in_size.nbytes),
        }


@dataclass
class H2HSpill:
    """Sequential file of edges whose endpoints are both high-degree."""

    path: Path
    count: int
    id_bytes: int

    def iter_chunks(self, chunk_edges: int = 1 << 20) -> Iterator[np.ndarray]:
        from .edge_io import BinaryEdgeFile

        if self.count == 0:
            return iter(())
        return BinaryEdgeFile(self.path, id_bytes=self.id_bytes).iter_chunks(chunk_edges)

    def delete(self) -> None:
        """Remove the spill file if it exists."""
        try:
            self.path.unlink()
            logger.debug(f"Deleted spill file {self.path}")
        except FileNotFoundError:
            pass


class MemoryEstimate(BaseModel):
    """Analytic footprint of the NE++ data structures, per structure and total."""

    index_arrays: int = 0
    column: int = 0
    size_fields: int = 0
    bitsets: int = 0
    heap: int = 0

    @property
    def total(self) -> int:
        return self.index_arrays + self.column + self.size_fields + self.bitsets + self.heap


class FootprintRow(BaseModel):
    """Memory estimate for one candidate degree cutoff."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    cutoff: int = Field(..., description="Vertices with degree <= cutoff are low-degree")
    tau_low: float = Field(..., description="Smallest tau producing this split (inclusive)")
    tau_high: float = Field(..., description="Tau above which the split changes (exclusive)")
    column_entries: int
    estimate_bytes: int
    feasible: bool


class TauPlan(BaseModel):
    """Result of planning tau against a memory budget."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    feasible: bool
    budget_bytes: int
    k: int
    id_bytes: int
    tau: Optional[float] = None
    tau_range: Optional[Tuple[float, float]] = None
    cutoff: Optional[int] = None
    estimate_bytes: Optional[int] = None
    fixed_bytes: int = 0
    footprint: List[FootprintRow] = Field(default_factory=list)
    planning_seconds: float = 0.0


def tau_from_cutoff(cutoff: float, next_cutoff: Optional[float], mean_degree: float) -> float:
    """
    The largest tau that classifies exactly d(v) <= cutoff as low.

    Vertices of degree next_cutoff must stay high (next_cutoff > tau * mean),
    so the result is the largest float below next_cutoff / mean that keeps
    the strict inequality. Returns +inf when there is no larger degree to
    exclude.
    """
    if next_cutoff is None or mean_degree <= 0:
        return math.inf
    tau = math.nextafter(next_cutoff / mean_degree, 0.0)
    while not next_cutoff > tau * mean_degree:
        tau = math.nextafter(tau, 0.0)
    return tau
