"""
Replication factor, balance and exactly-once validation.
"""

import logging
from collections import Counter
from typing import List, Optional, Union

import numpy as np

from hep_partitioner.assignment.models import EdgeAssignment
from hep_partitioner.core.errors import ValidationFailedError
from hep_partitioner.graph.edge_io import EdgeSource

from .models import QualityMetrics, ValidationReport

logger = logging.getLogger(__name__)

# Largest id for which lo * n + hi stays inside int64
_MAX_ENCODABLE_IDS = 3_037_000_499


def _check_partitions(assignment: EdgeAssignment) -> None:
    p = assignment.partition
    if len(p) and (p.min() < 0 or p.max() >= assignment.k):
        bad = int(((p < 0) | (p >= assignment.k)).sum())
        raise ValidationFailedError(f"{bad} record(s) carry a partition id outside [0, {assignment.k})")


def partition_vertex_sets(assignment: EdgeAssignment) -> List[np.ndarray]:
    """Distinct vertices covered by each partition."""
    _check_partitions(assignment)
    order = np.argsort(assignment.partition, kind="stable")
    p = assignment.partition[order]
    bounds = np.searchsorted(p, np.arange(assignment.k + 1))
    u = assignment.u[order]
    v = assignment.v[order]
    return [
        np.unique(np.concatenate((u[bounds[i]:bounds[i + 1]], v[bounds[i]:bounds[i + 1]])))
        for i in range(assignment.k)
    ]


def cover_counts(assignment: EdgeAssignment) -> np.ndarray:
    """|V(p_i)| for every partition."""
    return np.array([len(s) for s in partition_vertex_sets(assignment)], dtype=np.int64)


def replica_counts(assignment: EdgeAssignment, num_vertices: int) -> np.ndarray:
    """Number of partitions covering each vertex id."""
    sets = partition_vertex_sets(assignment)
    if not sets:
        return np.zeros(num_vertices, dtype=np.int64)
    return np.bincount(np.concatenate(sets).astype(np.int64), minlength=num_vertices)


def replication_factor(assignment: EdgeAssignment, num_active_vertices: int) -> float:
    """
    Sum of per-partition covered vertices over the number of active vertices.

    Raises:
        ValidationFailedError: If a record names a partition id >= k
    """
    counts = cover_counts(assignment)
    if num_active_vertices <= 0:
        return 0.0
    return float(counts.sum()) / num_active_vertices


def rf_from_cover(cover: np.ndarray, num_active_vertices: int) -> float:
    """Replication factor from per-partition cover bitsets."""
    if num_active_vertices <= 0:
        return 0.0
    return float(np.count_nonzero(cover)) / num_active_vertices


def edge_balance(sizes: np.ndarray, num_edges: int) -> float:
    """k * max partition size / |E|."""
    if num_edges == 0:
        return 0.0
    return len(sizes) * float(np.max(sizes)) / num_edges


def vertex_balance_from_counts(counts: np.ndarray) -> float:
    counts = np.asarray(counts, dtype=np.float64)
    if len(counts) == 0:
        return 0.0
    mean = counts.mean()
    if mean == 0:
        return 0.0
    return float(counts.std() / mean)


def vertex_balance(assignment: Union[EdgeAssignment, np.ndarray], k: Optional[int] = None) -> float:
    """
    Population standard deviation of per-partition vertex counts over their mean.

    Accepts an assignment or the per-partition counts directly.
    """
    if isinstance(assignment, EdgeAssignment):
        counts = cover_counts(assignment)
    else:
        counts = np.asarray(assignment)
    if k is not None and len(counts) != k:
        raise ValueError(f"Expected {k} partition counts, got {len(counts)}")
    return vertex_balance_from_counts(counts)


def quality_metrics(assignment: EdgeAssignment, num_active_vertices: int) -> QualityMetrics:
    counts = cover_counts(assignment)
    sizes = assignment.sizes()
    return QualityMetrics(
        replication_factor=float(counts.sum()) / num_active_vertices if num_active_vertices else 0.0,
        edge_balance=edge_balance(sizes, len(assignment)),
        vertex_balance=vertex_balance_from_counts(counts),
        sizes=sizes.tolist(),
        cover_counts=counts.tolist(),
    )


def _canonical(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.stack((np.minimum(u, v), np.maximum(u, v)), axis=1)


def _multiset_diff(expected: np.ndarray, got: np.ndarray):
    """(missing, duplicated, alien) between two (m, 2) arrays of canonical pairs."""
    top = 0
    if expected.size:
        top = max(top, int(expected.max()) + 1)
    if got.size:
        top = max(top, int(got.max()) + 1)

    if top > _MAX_ENCODABLE_IDS:
        exp_c = Counter(map(tuple, expected.tolist()))
        got_c = Counter(map(tuple, got.tolist()))
        missing = sum(max(c - got_c.get(key, 0), 0) for key, c in exp_c.items())
        duplicated = sum(max(got_c[key] - c, 0) for key, c in exp_c.items() if key in got_c)
        alien = sum(c for key, c in got_c.items() if key not in exp_c)
        return missing, duplicated, alien

    exp_keys, exp_counts = np.unique(expected[:, 0] * top + expected[:, 1], return_counts=True)
    got_keys, got_counts = np.unique(got[:, 0] * top + got[:, 1], return_counts=True)
    keys = np.union1d(exp_keys, got_keys)
    e = np.zeros(len(keys), dtype=np.int64)
    g = np.zeros(len(keys), dtype=np.int64)
    e[np.searchsorted(keys, exp_keys)] = exp_counts
    g[np.searchsorted(keys, got_keys)] = got_counts

    present = e > 0
    missing = int(np.maximum(e - g, 0)[present].sum())
    duplicated = int(np.maximum(g - e, 0)[present].sum())
    alien = int(g[~present].sum())
    return missing, duplicated, alien


def validate(assignment: EdgeAssignment, edge_source: EdgeSource, raise_on_failure: bool = False) -> ValidationReport:
    """
    Check that the assignment holds the input edge multiset (minus self-loops) exactly once.

    Edges are compared as unordered pairs.

    Args:
        assignment: Records to check
        edge_source: The original input
        raise_on_failure: Raise ValidationFailedError instead of returning a failed report

    Returns:
        ValidationReport with missing/duplicated/alien counts
    """
    chunks = []
    for chunk in edge_source.iter_chunks():
        u = chunk[:, 0].astype(np.int64)
        v = chunk[:, 1].astype(np.int64)
        keep = u != v
        chunks.append(_canonical(u[keep], v[keep]))
    expected = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    got = _canonical(assignment.u.astype(np.int64), assignment.v.astype(np.int64))

    p = assignment.partition
    invalid = int(((p < 0) | (p >= assignment.k)).sum())
    missing, duplicated, alien = _multiset_diff(expected, got)

    report = ValidationReport(
        passed=(missing == 0 and duplicated == 0 and alien == 0 and invalid == 0),
        expected_edges=len(expected),
        assigned_edges=len(got),
        missing=missing,
        duplicated=duplicated,
        alien=alien,
        invalid_partition=invalid,
        sizes=assignment.sizes().tolist(),
    )
    if report.passed:
        logger.info(f"Validation {report.summary()}")
    else:
        logger.error(f"Validation {report.summary()}")
        if raise_on_failure:
            raise ValidationFailedError(report.summary(), report=report)
    return report
