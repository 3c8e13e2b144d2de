"""
Shared fixtures: small hand-checked graphs and a helper that runs the
in-memory and streaming phases on an edge array.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import pytest

from hep_partitioner.assignment import EdgeAssignment, MemoryAssignmentSink
from hep_partitioner.graph import (
    ArrayEdgeSource,
    DegreeStats,
    H2HSpill,
    HighDegreeSet,
    PrunedCSR,
    build_pruned_csr,
    classify_vertices,
    compute_degrees,
)
from hep_partitioner.nepp import PartitionState, partition_in_memory
from hep_partitioner.streaming import DegreeLookup, StreamingState, stream_partition

# Nine vertices, eleven edges; vertices 3 (degree 5) and 4 (degree 4) are the
# high-degree pair at tau = 1.5.
TWO_HUB_EDGES = [
    (3, 4), (3, 0), (3, 1), (3, 2), (3, 5),
    (4, 6), (4, 7), (4, 8),
    (0, 1), (5, 6), (7, 8),
]

# k=2, tau=inf: p0 = {(0,1),(0,2),(1,2)}, p1 = {(2,3),(3,4)}
EXAMPLE_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]


@dataclass
class HepRun:
    """Everything produced by one prune -> NE++ -> HDRF run."""

    stats: DegreeStats
    highs: HighDegreeSet
    csr: PrunedCSR
    spill: H2HSpill
    state: PartitionState
    streaming: StreamingState
    sink: MemoryAssignmentSink

    @property
    def records(self):
        return self.sink.records

    @property
    def assignment(self) -> EdgeAssignment:
        return self.sink.to_assignment()


@pytest.fixture
def two_hub_edges():
    return np.array(TWO_HUB_EDGES, dtype=np.int64)


@pytest.fixture
def example_edges():
    return np.array(EXAMPLE_EDGES, dtype=np.int64)


@pytest.fixture
def two_hub_stats(two_hub_edges):
    return compute_degrees(ArrayEdgeSource(two_hub_edges))


@pytest.fixture
def run_hep(tmp_path) -> Callable[..., HepRun]:
    """Run HEP on an edge array with an in-memory sink."""
    counter = {"n": 0}

    def _run(
        edges,
        k: int,
        tau: float = math.inf,
        removal: str = "stable",
        debug: bool = False,
        alpha: float = 1.05,
        chunk_edges: Optional[int] = None,
    ) -> HepRun:
        counter["n"] += 1
        source = ArrayEdgeSource(edges)
        stats = compute_degrees(source, chunk_edges)
        highs = classify_vertices(stats, tau)
        csr, spill = build_pruned_csr(
            source, stats, highs, tmp_path / f"spill{counter['n']}.bin", chunk_edges=chunk_edges
        )
        sink = MemoryAssignmentSink(k)
        state = partition_in_memory(csr, highs, k, sink, removal_strategy=removal, debug=debug)
        st = StreamingState.fresh(
            k,
            stats.num_vertices,
            DegreeLookup.from_csr(csr, highs),
            stats.num_edges,
            alpha=alpha,
            cover=state.cover,
            sizes=state.sizes,
        )
        stream_partition(spill, st, sink)
        return HepRun(stats, highs, csr, spill, state, st, sink)

    return _run
