"""
Single-pass streaming partitioners: informed HDRF and the random and
degree-hashing baselines.
"""

import logging
import time
from typing import Optional

import numpy as np

from hep_partitioner.assignment.store import AssignmentSink
from hep_partitioner.core.errors import IngestionError, StreamingError
from hep_partitioner.graph.edge_io import EdgeSource

from .models import DegreeLookup, StreamingState
from .scoring import hdrf_scores

logger = logging.getLogger(__name__)

_HASH_MULTIPLIER = np.uint64(0x9E3779B97F4A7C15)


def _split(chunk: np.ndarray):
    u = chunk[:, 0].astype(np.int64)
    v = chunk[:, 1].astype(np.int64)
    keep = u != v
    return u[keep], v[keep]


def stream_partition(
    spill: EdgeSource,
    st: StreamingState,
    sink: AssignmentSink,
    chunk_edges: Optional[int] = None,
) -> StreamingState:
    """
    Assign every spill edge to its highest-scoring eligible partition.

    A partition is eligible while its size is below alpha * |E| / k. Among
    equal scores the lowest partition index wins. When no partition is
    eligible the edge goes to the least-loaded partition and the fallback
    counter is incremented.

    Args:
        spill: High-to-high edges (any edge source)
        st: State seeded from the in-memory phase; updated in place
        sink: Record consumer
        chunk_edges: Edges per read

    Returns:
        The updated state

    Raises:
        StreamingError: If the spill cannot be read
    """
    started = time.perf_counter()
    bound = st.max_size_bound
    sizes = st.sizes
    cover = st.cover
    streamed = 0

    try:
        for chunk in spill.iter_chunks(chunk_edges):
            us, vs = _split(chunk)
            if len(us) == 0:
                continue
            dus = st.degrees.degrees_of(us).tolist()
            dvs = st.degrees.degrees_of(vs).tolist()
            for u, v, du, dv in zip(us.tolist(), vs.tolist(), dus, dvs):
                eligible = sizes < bound
                if eligible.any():
                    scores = hdrf_scores(u, v, du, dv, st)
                    scores[~eligible] = -np.inf
                    target = int(np.argmax(scores))
                else:
                    target = int(np.argmin(sizes))
                    st.fallback_count += 1
                sizes[target] += 1
                cover[target, u] = True
                cover[target, v] = True
                sink.append(u, v, target)
                streamed += 1
    except (IngestionError, OSError) as e:
        raise StreamingError(f"Failed reading spill edges: {e}") from e

    if st.fallback_count:
        logger.warning(
            f"{st.fallback_count} edge(s) assigned to the least-loaded partition: "
            f"no partition below the balance bound {bound:.1f}"
        )
    logger.info(f"HDRF streamed {streamed} edges in {time.perf_counter() - started:.3f}s")
    return st


def random_assign(
    source: EdgeSource,
    k: int,
    seed: int,
    sink: AssignmentSink,
    state: Optional[StreamingState] = None,
    chunk_edges: Optional[int] = None,
) -> np.ndarray:
    """
    Assign edges uniformly at random.

    Returns:
        Per-partition counts of the edges assigned by this call
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    counts = np.zeros(k, dtype=np.int64)
    for chunk in source.iter_chunks(chunk_edges):
        us, vs = _split(chunk)
        if len(us) == 0:
            continue
        parts = rng.integers(0, k, size=len(us))
        sink.extend(us, vs, parts)
        counts += np.bincount(parts, minlength=k)
        if state is not None:
            state.record_many(us, vs, parts)
    logger.info(f"Random streaming assigned {int(counts.sum())} edges (seed {seed})")
    return counts


def degree_hash_assign(
    source: EdgeSource,
    degrees: DegreeLookup,
    k: int,
    sink: AssignmentSink,
    state: Optional[StreamingState] = None,
    chunk_edges: Optional[int] = None,
) -> np.ndarray:
    """
    Hash the lower-degree endpoint of each edge to a partition.

    Ties on degree pick the smaller id.

    Returns:
        Per-partition counts of the edges assigned by this call
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counts = np.zeros(k, dtype=np.int64)
    for chunk in source.iter_chunks(chunk_edges):
        us, vs = _split(chunk)
        if len(us) == 0:
            continue
        du = degrees.degrees_of(us)
        dv = degrees.degrees_of(vs)
        pick = np.where(du < dv, us, np.where(dv < du, vs, np.minimum(us, vs)))
        parts = (vertex_hash(pick) % np.uint64(k)).astype(np.int64)
        sink.extend(us, vs, parts)
        counts += np.bincount(parts, minlength=k)
        if state is not None:
            state.record_many(us, vs, parts)
    logger.info(f"Degree hashing assigned {int(counts.sum())} edges")
    return counts


def vertex_hash(vertices: np.ndarray) -> np.ndarray:
    """Multiplicative (Fibonacci) hash of vertex ids, high 32 bits."""
    with np.errstate(over="ignore"):
        mixed = vertices.astype(np.uint64) * _HASH_MULTIPLIER
    return mixed >> np.uint64(32)
