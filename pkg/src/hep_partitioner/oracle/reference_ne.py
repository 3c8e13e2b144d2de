"""
Reference neighborhood expansion over the full, unpruned graph.

Edges are invalidated eagerly through a per-edge flag instead of being
removed lazily from the adjacency lists. Seeding, tie-breaks, neighbor order
and spill-over match the NE++ engine, so at tau = inf both produce the same
record sequence.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from hep_partitioner.assignment.store import AssignmentSink
from hep_partitioner.core.errors import InvariantViolation
from hep_partitioner.graph.edge_io import EdgeSource
from hep_partitioner.nepp.heap import ExternalDegreeHeap
from hep_partitioner.nepp.models import ExpansionDiagnostics, PartitionState

logger = logging.getLogger(__name__)


class ReferenceNE:
    """Neighborhood expansion with eager edge bookkeeping."""

    def __init__(self, edges: np.ndarray, k: int, sink: AssignmentSink, num_vertices: Optional[int] = None):
        if k < 1:
            raise ValueError("k must be >= 1")
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        edges = edges[edges[:, 0] != edges[:, 1]]
        n = int(edges.max()) + 1 if len(edges) else 0
        if num_vertices is not None:
            n = max(n, num_vertices)

        self.k = k
        self.sink = sink
        self.num_vertices = n
        self.edges: List[Tuple[int, int]] = [tuple(e) for e in edges.tolist()]
        m = len(self.edges)

        outs: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        ins: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(self.edges):
            outs[u].append((v, eid))
            ins[v].append((u, eid))
        self.out_adj = outs
        self.adj = [outs[v] + ins[v] for v in range(n)]

        self.valid = bytearray(b"\x01" * m)
        self.valid_count = [len(a) for a in self.adj]
        self.core = bytearray(n)
        self.in_s = bytearray(n)
        self.members: List[int] = []
        self.cover = np.zeros((k, n), dtype=bool)
        self.sizes = [0] * k
        self.capacity = -(-m // k)
        self.current = 0
        self.cursor = 0
        self.heap = ExternalDegreeHeap(n)
        self.diagnostics = ExpansionDiagnostics()

    def _assign(self, eid: int) -> None:
        target = self.current
        if self.sizes[target] >= self.capacity:
            target += 1
            while target < self.k - 1 and self.sizes[target] >= self.capacity:
                target += 1
            target = min(target, self.k - 1)
            self.diagnostics.spilled_assignments += 1
        self._emit(eid, target)

    def _emit(self, eid: int, target: int) -> None:
        u, v = self.edges[eid]
        self.valid[eid] = 0
        self.valid_count[u] -= 1
        self.valid_count[v] -= 1
        self.sizes[target] += 1
        self.cover[target, u] = True
        self.cover[target, v] = True
        self.sink.append(u, v, target)

    def move_to_secondary(self, v: int) -> None:
        self.in_s[v] = 1
        self.members.append(v)
        d_ext = self.valid_count[v]
        for u, eid in self.adj[v]:
            if not self.valid[eid]:
                continue
            if self.core[u] or self.in_s[u]:
                d_ext -= 1
                if u in self.heap:
                    self.heap.decrease_key(u)
                self._assign(eid)
        self.heap.push(v, d_ext)

    def move_to_core(self, v: int) -> None:
        self.core[v] = 1
        for u, eid in self.adj[v]:
            if self.valid[eid] and not (self.core[u] or self.in_s[u]):
                self.move_to_secondary(u)

    def initialize(self) -> bool:
        v = self.cursor
        while v < self.num_vertices:
            if self.core[v]:
                v += 1
                continue
            if self.valid_count[v] == 0:
                self.core[v] = 1
                v += 1
                continue
            self.cursor = v
            self.diagnostics.seeds += 1
            self.move_to_secondary(v)
            return True
        self.cursor = self.num_vertices
        return False

    def expand_partition(self) -> bool:
        cur = self.current
        while self.sizes[cur] < self.capacity:
            if not self.heap:
                if not self.initialize():
                    self.diagnostics.init_exhausted = True
                    return False
                continue
            v, _ = self.heap.pop()
            self.move_to_core(v)
        return True

    def assign_remaining(self) -> None:
        last = self.k - 1
        self.current = last
        for v in range(self.num_vertices):
            if self.core[v]:
                continue
            for _, eid in self.out_adj[v]:
                if self.valid[eid]:
                    self._emit(eid, last)
        if any(self.valid):
            raise InvariantViolation("Reference NE left edges unassigned")

    def run(self) -> PartitionState:
        logger.info(f"Reference NE: {len(self.edges)} edges, k={self.k}, capacity {self.capacity}")
        for cur in range(self.k - 1):
            self.current = cur
            filled = self.expand_partition()
            for v in self.members:
                self.in_s[v] = 0
            self.members.clear()
            self.heap.clear()
            if not filled:
                break
        self.assign_remaining()

        return PartitionState(
            core=np.array(list(self.core), dtype=bool),
            cover=self.cover,
            sizes=np.array(self.sizes, dtype=np.int64),
            capacity=self.capacity,
            k=self.k,
            current=self.current,
            init_cursor=self.cursor,
            diagnostics=self.diagnostics,
        )


def reference_ne(
    edge_source: EdgeSource,
    k: int,
    sink: AssignmentSink,
    num_vertices: Optional[int] = None,
) -> PartitionState:
    """
    Run reference NE on every edge of the source.

    Args:
        edge_source: Full graph
        k: Number of partitions
        sink: Record consumer
        num_vertices: Id-space size for the cover bitsets (defaults to max id + 1)

    Returns:
        PartitionState of the run
    """
    chunks = [np.asarray(c, dtype=np.int64) for c in edge_source.iter_chunks()]
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return ReferenceNE(edges, k, sink, num_vertices=num_vertices).run()
