"""
Diagnostic tables: replication by degree decade and core versus
secondary-only vertex degrees.
"""

import logging
from typing import List

import numpy as np

from hep_partitioner.assignment.models import EdgeAssignment

from .calculator import replica_counts
from .models import CoreSecondaryDegrees, DegreeBucket

logger = logging.getLogger(__name__)


def degree_bucket_report(assignment: EdgeAssignment, degrees: np.ndarray) -> List[DegreeBucket]:
    """
    Mean replication factor per degree decade: [1, 10], [11, 100], ...

    Vertices with degree 0 are ignored; empty buckets below the maximum
    degree are reported with zero vertices.
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    replicas = replica_counts(assignment, len(degrees))
    active = degrees > 0
    if not active.any():
        return []

    d = degrees[active]
    r = replicas[active]
    max_degree = int(d.max())
    upper = [10]
    while upper[-1] < max_degree:
        upper.append(upper[-1] * 10)
    bucket = np.searchsorted(np.array(upper, dtype=np.int64), d, side="left")

    counts = np.bincount(bucket, minlength=len(upper))
    sums = np.bincount(bucket, weights=r, minlength=len(upper))

    report = []
    low = 1
    for idx, high in enumerate(upper):
        n = int(counts[idx])
        report.append(
            DegreeBucket(
                low=low,
                high=high,
                vertices=n,
                mean_replication=float(sums[idx] / n) if n else 0.0,
            )
        )
        low = high + 1
    return report


def core_secondary_degrees(
    core: np.ndarray,
    cover: np.ndarray,
    degrees: np.ndarray,
    mean_degree: float,
) -> CoreSecondaryDegrees:
    """
    Average degree of vertices in C against vertices covered but never in C.

    Args:
        core: Core membership from the in-memory phase
        cover: Per-partition cover bitsets from the in-memory phase
        degrees: Full vertex degrees
        mean_degree: Graph mean degree (for normalisation)
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    active = degrees > 0
    in_core = core & active
    secondary_only = cover.any(axis=0) & ~core & active

    n_core = int(in_core.sum())
    n_sec = int(secondary_only.sum())
    result = CoreSecondaryDegrees(
        core_vertices=n_core,
        secondary_vertices=n_sec,
        core_avg_degree=float(degrees[in_core].mean()) if n_core else 0.0,
        secondary_avg_degree=float(degrees[secondary_only].mean()) if n_sec else 0.0,
        mean_degree=mean_degree,
    )
    logger.debug(
        f"Avg degree C={result.core_avg_degree:.2f} S\\C={result.secondary_avg_degree:.2f} "
        f"(mean {mean_degree:.2f})"
    )
    return result
