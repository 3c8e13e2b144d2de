"""
First ingestion pass: degree statistics and high/low-degree classification.
"""

import logging
import math
from typing import Optional

import numpy as np

from .edge_io import EdgeSource
from .models import DegreeStats, HighDegreeSet

logger = logging.getLogger(__name__)


def _grow(arr: np.ndarray, size: int) -> np.ndarray:
    if size <= len(arr):
        return arr
    grown = np.zeros(max(size, 2 * len(arr)), dtype=arr.dtype)
    grown[:len(arr)] = arr
    return grown


def compute_degrees(edge_source: EdgeSource, chunk_edges: Optional[int] = None) -> DegreeStats:
    """
    Count exact vertex degrees in one sequential pass.

    Self-loops are tallied separately and excluded from degrees and the edge
    count; their ids still extend the id space.

    Args:
        edge_source: Sequential edge reader
        chunk_edges: Edges per chunk

    Returns:
        Degree statistics for the graph
    """
    degrees = np.zeros(0, dtype=np.int64)
    out_degrees = np.zeros(0, dtype=np.int64)
    num_vertices = 0
    num_edges = 0
    num_self_loops = 0

    for chunk in edge_source.iter_chunks(chunk_edges):
        if len(chunk) == 0:
            continue
        u = chunk[:, 0].astype(np.int64)
        v = chunk[:, 1].astype(np.int64)
        num_vertices = max(num_vertices, int(max(u.max(), v.max())) + 1)

        loops = u == v
        num_self_loops += int(loops.sum())
        u = u[~loops]
        v = v[~loops]
        num_edges += len(u)

        degrees = _grow(degrees, num_vertices)
        out_degrees = _grow(out_degrees, num_vertices)
        if len(u):
            out_counts = np.bincount(u, minlength=num_vertices)
            in_counts = np.bincount(v, minlength=num_vertices)
            degrees[:num_vertices] += out_counts + in_counts
            out_degrees[:num_vertices] += out_counts

    degrees = degrees[:num_vertices].copy()
    out_degrees = out_degrees[:num_vertices].copy()

    active = degrees > 0
    num_active = int(active.sum())
    mean_degree = 2.0 * num_edges / num_active if num_active else 0.0

    distinct, counts = np.unique(degrees[active], return_counts=True)
    histogram = {int(d): int(c) for d, c in zip(distinct, counts)}
    suffix_volume = np.cumsum(distinct * counts) if len(distinct) else np.zeros(0, np.int64)

    if num_self_loops:
        logger.warning(f"Skipped {num_self_loops} self-loop(s) during degree counting")

    logger.info(
        f"Degree pass: {num_edges} edges, {num_vertices} ids, {num_active} active vertices, "
        f"mean degree {mean_degree:.3f}"
    )

    return DegreeStats(
        degrees=degrees,
        out_degrees=out_degrees,
        num_vertices=num_vertices,
        num_active_vertices=num_active,
        num_edges=num_edges,
        num_self_loops=num_self_loops,
        mean_degree=mean_degree,
        histogram=histogram,
        cutoffs=distinct.astype(np.int64),
        suffix_volume=suffix_volume.astype(np.int64),
    )


def high_degree_mask(stats: DegreeStats, tau: float) -> np.ndarray:
    """Boolean mask of vertices with d(v) > tau * mean_degree."""
    if math.isinf(tau) or stats.num_edges == 0:
        return np.zeros(stats.num_vertices, dtype=bool)
    return stats.degrees > tau * stats.mean_degree


def classify_vertices(stats: DegreeStats, tau: float) -> HighDegreeSet:
    """
    Split vertices into high-degree (d(v) > tau * mean degree) and low-degree.

    Args:
        stats: Degree statistics
        tau: Threshold factor, > 0 (may be +inf)

    Returns:
        High-degree membership with exact degrees of the members
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")

    membership = high_degree_mask(stats, tau)
    members = np.flatnonzero(membership)
    side_degrees = {int(v): int(stats.degrees[v]) for v in members}

    threshold_degree = None
    if not math.isinf(tau):
        threshold_degree = int(math.floor(tau * stats.mean_degree)) + 1

    logger.info(
        f"Classified {len(members)} high-degree vertices at tau={tau} "
        f"(degree > {tau * stats.mean_degree if stats.num_edges else 0:.3f})"
    )

    return HighDegreeSet(
        membership=membership,
        tau=tau,
        threshold_degree=threshold_degree,
        side_degrees=side_degrees,
    )
