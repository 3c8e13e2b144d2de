"""
NE++ expansion engine.

Partitions the in-memory edges (all edges with at least one low-degree
endpoint) by neighborhood expansion over the pruned CSR. High-degree vertices
are treated as members of every secondary set: they are never expanded and
their (absent) adjacency lists are never read. Assigned edges are removed
lazily; the clean-up after each partition only touches the adjacency lists of
vertices left in S_i without entering the core.
"""

import logging
import time
from typing import List, Tuple, Union

import numpy as np

from hep_partitioner.assignment.store import AssignmentSink
from hep_partitioner.core.config import RemovalStrategy
from hep_partitioner.core.errors import InvariantViolation
from hep_partitioner.graph.models import HighDegreeSet, PrunedCSR

from .heap import ExternalDegreeHeap
from .models import ExpansionDiagnostics, PartitionState

logger = logging.getLogger(__name__)


def _bool_view(buf: bytearray, shape: Tuple[int, ...]) -> np.ndarray:
    """Writable numpy bool view over a byte-per-vertex bitset."""
    if len(buf) == 0:
        return np.zeros(shape, dtype=bool)
    return np.frombuffer(buf, dtype=np.bool_).reshape(shape)


class ExpansionEngine:
    """
    Single-use NE++ run over one pruned CSR.

    The CSR's column array and size fields are modified in place by clean-up.
    Vertex sets are byte-per-vertex bytearrays for fast scalar access; numpy
    views of them are exposed through the returned PartitionState.
    """

    def __init__(
        self,
        csr: PrunedCSR,
        highs: HighDegreeSet,
        k: int,
        sink: AssignmentSink,
        removal_strategy: Union[RemovalStrategy, str] = RemovalStrategy.STABLE,
        debug: bool = False,
    ):
        """
        Prepare an expansion run.

        Args:
            csr: Freshly built pruned CSR
            highs: High-degree classification used to build the CSR
            k: Number of partitions
            sink: Receives every (u, v, partition) record
            removal_strategy: How clean-up compacts adjacency sublists
            debug: Enable d_ext recounts, clean-up postcondition scans and
                sealed-core access counting
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        n = csr.num_vertices
        if len(highs.membership) != n:
            raise ValueError(
                f"High-degree membership covers {len(highs.membership)} ids, CSR has {n}"
            )

        self.csr = csr
        self.k = k
        self.sink = sink
        self.removal_strategy = RemovalStrategy(removal_strategy)
        self.debug = debug
        self.num_vertices = n

        self._column = csr.column
        self._index_out: List[int] = csr.index_out.tolist()
        self._index_in: List[int] = csr.index_in.tolist()
        self._out_size: List[int] = csr.out_size.tolist()
        self._in_size: List[int] = csr.in_size.tolist()
        self._high = highs.membership.astype(np.uint8).tobytes()

        self._core = bytearray(n)
        self._frontier = bytearray(n)
        self._members: List[int] = []
        self._sealed = bytearray(n)
        self._cover = bytearray(k * n)

        self.sizes: List[int] = [0] * k
        self.capacity = -(-csr.num_inmem_edges // k)
        self.current = 0
        self.init_cursor = 0
        self.heap = ExternalDegreeHeap(n)
        self.diagnostics = ExpansionDiagnostics(column_entries=len(csr.column))

    # -- membership and adjacency access --------------------------------------

    def _in_current(self, u: int) -> bool:
        """u in C or S_current, with every high-degree vertex counted as in S_current."""
        return bool(self._high[u] or self._core[u] or self._frontier[u])

    def _entries(self, v: int) -> Tuple[List[int], List[int]]:
        col = self._column
        start = self._index_out[v]
        outs = col[start:start + self._out_size[v]].tolist()
        start = self._index_in[v]
        ins = col[start:start + self._in_size[v]].tolist()
        return outs, ins

    def _read(self, v: int) -> Tuple[List[int], List[int]]:
        if self.debug and self._sealed[v]:
            self.diagnostics.sealed_reads += 1
            logger.error(f"Adjacency read of sealed core vertex {v} in partition {self.current}")
        return self._entries(v)

    # -- assignment ------------------------------------------------------------

    def _emit(self, u: int, v: int, target: int) -> None:
        self.sizes[target] += 1
        base = target * self.num_vertices
        self._cover[base + u] = 1
        self._cover[base + v] = 1
        self.sink.append(u, v, target)

    def _assign(self, u: int, v: int) -> None:
        """Assign to the current partition, spilling over once it is full."""
        target = self.current
        if self.sizes[target] >= self.capacity:
            target += 1
            while target < self.k - 1 and self.sizes[target] >= self.capacity:
                target += 1
            target = min(target, self.k - 1)
            self.diagnostics.spilled_assignments += 1
        self._emit(u, v, target)

    # -- expansion steps -------------------------------------------------------

    def move_to_secondary(self, v: int) -> None:
        """
        Add v to S_current and assign its edges into C and S_current.

        Edges keep the orientation of the input: an out-entry u of v yields
        (v, u), an in-entry yields (u, v).
        """
        self._frontier[v] = 1
        self._members.append(v)
        outs, ins = self._read(v)
        heap = self.heap
        d_ext = len(outs) + len(ins)

        for u in outs:
            if self._in_current(u):
                d_ext -= 1
                if u in heap:
                    heap.decrease_key(u)
                self._assign(v, u)
        for u in ins:
            if self._in_current(u):
                d_ext -= 1
                if u in heap:
                    heap.decrease_key(u)
                self._assign(u, v)

        heap.push(v, d_ext)

    def move_to_core(self, v: int) -> None:
        """Add v to C and pull its external low-degree neighbors into S_current."""
        self._core[v] = 1
        outs, ins = self._read(v)
        for u in outs:
            if not self._in_current(u):
                self.move_to_secondary(u)
        for u in ins:
            if not self._in_current(u):
                self.move_to_secondary(u)

    def initialize(self) -> bool:
        """
        Seed the expansion from the next unvisited vertex by id.

        Vertices without valid entries are put into C as they are passed. The
        seed enters S_current; the expansion loop then pops it into C.

        Returns:
            False when no eligible vertex remains
        """
        n = self.num_vertices
        v = self.init_cursor
        while v < n:
            if self._high[v] or self._core[v]:
                v += 1
                continue
            if self._out_size[v] + self._in_size[v] == 0:
                self._core[v] = 1
                v += 1
                continue
            self.init_cursor = v
            self.diagnostics.seeds += 1
            self.move_to_secondary(v)
            return True
        self.init_cursor = n
        return False

    def expand_partition(self) -> bool:
        """
        Grow the current partition until it holds capacity edges.

        Returns:
            False if initialization ran out of seeds before the partition filled
        """
        cur = self.current
        heap = self.heap
        while self.sizes[cur] < self.capacity:
            if not heap:
                if not self.initialize():
                    self.diagnostics.init_exhausted = True
                    logger.debug(f"Initialization exhausted in partition {cur}")
                    return False
                continue
            v, _ = heap.pop()
            self.move_to_core(v)
        return True

    def clean_up(self, i: int) -> int:
        """
        Remove entries pointing into C or S_i from every vertex of S_i not in C.

        Returns:
            Number of column entries removed
        """
        column = self._column
        core = self._core
        stable = self.removal_strategy == RemovalStrategy.STABLE
        removed = 0

        for v in self._members:
            if core[v]:
                continue
            for starts, sizes in ((self._index_out, self._out_size), (self._index_in, self._in_size)):
                size = sizes[v]
                if size == 0:
                    continue
                start = starts[v]
                entries = column[start:start + size].tolist()
                if stable:
                    kept = [u for u in entries if not self._in_current(u)]
                    new_size = len(kept)
                else:
                    new_size = size
                    j = 0
                    while j < new_size:
                        if self._in_current(entries[j]):
                            new_size -= 1
                            entries[j] = entries[new_size]
                        else:
                            j += 1
                    kept = entries[:new_size]
                if new_size != size:
                    column[start:start + new_size] = kept
                    sizes[v] = new_size
                    removed += size - new_size

        self.diagnostics.removed_entries += removed
        self.diagnostics.cleaned_per_partition.append(removed)
        return removed

    def assign_remaining(self) -> None:
        """
        Sweep every low-degree vertex outside C into the last partition.

        Low-to-low edges are emitted from the out-entry side; edges to a
        high-degree neighbor are emitted from the low-degree side whichever
        sublist holds them.
        """
        last = self.k - 1
        self.current = last
        high = self._high
        for v in range(self.num_vertices):
            if high[v] or self._core[v]:
                continue
            outs, ins = self._read(v)
            for u in outs:
                self._emit(v, u, last)
            for u in ins:
                if high[u]:
                    self._emit(u, v, last)

        if self.sizes[last] > self.capacity:
            raise InvariantViolation(
                f"Last partition holds {self.sizes[last]} edges, above capacity {self.capacity}"
            )

    # -- partition lifecycle ---------------------------------------------------

    def _check_external_degrees(self) -> None:
        for v in self.heap.members():
            outs, ins = self._entries(v)
            expected = sum(1 for u in outs + ins if not self._in_current(u))
            if self.heap.key(v) != expected:
                raise InvariantViolation(
                    f"d_ext({v}) is {self.heap.key(v)}, recount gives {expected}"
                )
            self.diagnostics.recount_checks += 1
        if not self.heap.check():
            raise InvariantViolation("External-degree heap is inconsistent")

    def _check_clean_up(self, i: int) -> None:
        for v in self._members:
            if self._core[v]:
                continue
            outs, ins = self._entries(v)
            if any(self._in_current(u) for u in outs + ins):
                raise InvariantViolation(
                    f"Vertex {v} still references C or S_{i} after clean-up"
                )

    def _finish_partition(self, i: int) -> None:
        if self.debug:
            self._check_external_degrees()
        removed = self.clean_up(i)
        if self.debug:
            self._check_clean_up(i)
            self._sealed[:] = self._core

        for v in self._members:
            self._frontier[v] = 0
        logger.debug(
            f"Partition {i}: {self.sizes[i]} edges, {len(self._members)} secondary vertices, "
            f"{removed} entries cleaned"
        )
        self._members.clear()
        self.heap.clear()

    def run(self) -> PartitionState:
        """Expand partitions 0..k-2, then sweep the rest into k-1."""
        started = time.perf_counter()
        logger.info(
            f"NE++: {self.csr.num_inmem_edges} in-memory edges, k={self.k}, "
            f"capacity {self.capacity}, removal={self.removal_strategy.value}"
        )

        for cur in range(self.k - 1):
            self.current = cur
            filled = self.expand_partition()
            self._finish_partition(cur)
            if not filled:
                break

        self.assign_remaining()

        self.csr.out_size[:] = self._out_size
        self.csr.in_size[:] = self._in_size

        n = self.num_vertices
        state = PartitionState(
            core=_bool_view(self._core, (n,)),
            cover=_bool_view(self._cover, (self.k, n)),
            sizes=np.array(self.sizes, dtype=np.int64),
            capacity=self.capacity,
            k=self.k,
            current=self.current,
            init_cursor=self.init_cursor,
            diagnostics=self.diagnostics,
        )
        logger.info(
            f"NE++ finished in {time.perf_counter() - started:.3f}s: sizes {self.sizes}, "
            f"cleaned fraction {self.diagnostics.cleaned_fraction:.3f}"
        )
        if self.diagnostics.sealed_reads:
            logger.error(f"{self.diagnostics.sealed_reads} adjacency reads of sealed core vertices")
        return state


def partition_in_memory(
    csr: PrunedCSR,
    highs: HighDegreeSet,
    k: int,
    sink: AssignmentSink,
    removal_strategy: Union[RemovalStrategy, str] = RemovalStrategy.STABLE,
    debug: bool = False,
) -> PartitionState:
    """
    Partition all in-memory edges of the pruned CSR with NE++.

    Args:
        csr: Pruned CSR (modified in place)
        highs: High-degree classification
        k: Number of partitions
        sink: Record consumer
        removal_strategy: "stable" or "swap" clean-up compaction
        debug: Enable invariant instrumentation

    Returns:
        Final PartitionState with per-partition cover bitsets
    """
    engine = ExpansionEngine(csr, highs, k, sink, removal_strategy=removal_strategy, debug=debug)
    return engine.run()
