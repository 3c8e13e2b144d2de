"""
Streaming state: cover bitsets, partition sizes and full-degree lookup.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from hep_partitioner.graph.models import HighDegreeSet, PrunedCSR

logger = logging.getLogger(__name__)


class DegreeLookup:
    """
    Full vertex degrees without a dense degree array.

    Low-degree vertices are answered from the length of their CSR region,
    high-degree vertices from the side table collected at classification.
    """

    def __init__(self, index_out: np.ndarray, high_mask: np.ndarray, side_ids: np.ndarray, side_degrees: np.ndarray):
        self.index_out = index_out
        self.high_mask = high_mask
        self.side_ids = side_ids
        self.side_degrees = side_degrees

    @classmethod
    def from_csr(cls, csr: PrunedCSR, highs: HighDegreeSet) -> "DegreeLookup":
        items = sorted(highs.side_degrees.items())
        side_ids = np.array([v for v, _ in items], dtype=np.int64)
        side_degrees = np.array([d for _, d in items], dtype=np.int64)
        return cls(csr.index_out, highs.membership, side_ids, side_degrees)

    @classmethod
    def from_degrees(cls, degrees: np.ndarray) -> "DegreeLookup":
        """Lookup over a plain degree array (baseline runs without a CSR)."""
        index_out = np.zeros(len(degrees) + 1, dtype=np.int64)
        np.cumsum(degrees, out=index_out[1:])
        empty = np.zeros(0, dtype=np.int64)
        return cls(index_out, np.zeros(len(degrees), dtype=bool), empty, empty)

    def degree(self, v: int) -> int:
        if self.high_mask[v]:
            return int(self.side_degrees[np.searchsorted(self.side_ids, v)])
        return int(self.index_out[v + 1]) - int(self.index_out[v])

    def degrees_of(self, vertices: np.ndarray) -> np.ndarray:
        """Vectorised degree lookup."""
        vertices = np.asarray(vertices, dtype=np.int64)
        result = self.index_out[vertices + 1].astype(np.int64) - self.index_out[vertices].astype(np.int64)
        if len(self.side_ids):
            high = self.high_mask[vertices]
            if high.any():
                slots = np.searchsorted(self.side_ids, vertices[high])
                result[high] = self.side_degrees[slots]
        return result


@dataclass
class StreamingState:
    """
    Replication state for stateful streaming.

    cover[i, v] is True when v is replicated on partition i. sizes continues
    the in-memory phase's counts. Partitions at or above max_size_bound are
    not eligible for scoring.
    """

    cover: np.ndarray
    sizes: np.ndarray
    degrees: DegreeLookup
    num_edges: int
    lam: float = 1.1
    alpha: float = 1.05
    epsilon: float = 1.0
    fallback_count: int = 0

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def max_size_bound(self) -> float:
        return self.alpha * self.num_edges / self.k

    @classmethod
    def fresh(
        cls,
        k: int,
        num_vertices: int,
        degrees: DegreeLookup,
        num_edges: int,
        lam: float = 1.1,
        alpha: float = 1.05,
        epsilon: float = 1.0,
        cover: Optional[np.ndarray] = None,
        sizes: Optional[np.ndarray] = None,
    ) -> "StreamingState":
        """
        Build a state, copying any given cover and sizes.

        Without cover/sizes the state starts empty (uninformed streaming).
        """
        cover = np.zeros((k, num_vertices), dtype=bool) if cover is None else cover.copy()
        sizes = np.zeros(k, dtype=np.int64) if sizes is None else np.asarray(sizes, dtype=np.int64).copy()
        return cls(
            cover=cover,
            sizes=sizes,
            degrees=degrees,
            num_edges=num_edges,
            lam=lam,
            alpha=alpha,
            epsilon=epsilon,
        )

    def record(self, u: int, v: int, partition: int) -> None:
        self.sizes[partition] += 1
        self.cover[partition, u] = True
        self.cover[partition, v] = True

    def record_many(self, us: np.ndarray, vs: np.ndarray, partitions: np.ndarray) -> None:
        np.add.at(self.sizes, partitions, 1)
        self.cover[partitions, us] = True
        self.cover[partitions, vs] = True
