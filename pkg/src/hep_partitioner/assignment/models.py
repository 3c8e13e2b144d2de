"""
Edge assignment data model.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np


@dataclass
class EdgeAssignment:
    """
    A complete assignment of edges to partitions.

    Attributes:
        u: Left endpoint of each record
        v: Right endpoint of each record
        partition: Partition id of each record
        k: Number of partitions
    """

    u: np.ndarray
    v: np.ndarray
    partition: np.ndarray
    k: int

    def __len__(self) -> int:
        return len(self.u)

    @classmethod
    def from_records(cls, records: List[Tuple[int, int, int]], k: int) -> "EdgeAssignment":
        arr = np.asarray(records, dtype=np.int64).reshape(-1, 3)
        return cls(u=arr[:, 0], v=arr[:, 1], partition=arr[:, 2], k=k)

    def records(self) -> List[Tuple[int, int, int]]:
        return list(zip(self.u.tolist(), self.v.tolist(), self.partition.tolist()))

    def sizes(self) -> np.ndarray:
        """Edges per partition (ids >= k are ignored)."""
        p = self.partition[(self.partition >= 0) & (self.partition < self.k)]
        return np.bincount(p.astype(np.int64), minlength=self.k)
