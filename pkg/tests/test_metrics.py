"""
Tests for the metrics module: replication factor, balance, validation and
diagnostic tables.
"""

import numpy as np
import pytest

from hep_partitioner.assignment import EdgeAssignment
from hep_partitioner.core.errors import ValidationFailedError
from hep_partitioner.graph import ArrayEdgeSource
from hep_partitioner.metrics import (
    core_secondary_degrees,
    cover_counts,
    degree_bucket_report,
    edge_balance,
    quality_metrics,
    replica_counts,
    replication_factor,
    rf_from_cover,
    validate,
    vertex_balance,
)

STAR = [(0, i) for i in range(1, 9)]


def star_split():
    records = [(u, v, 0 if v <= 4 else 1) for u, v in STAR]
    return EdgeAssignment.from_records(records, 2)


class TestReplicationFactor:
    """Test replication factor computations."""

    def test_star_split(self):
        assert replication_factor(star_split(), 9) == pytest.approx(10 / 9)

    def test_single_partition(self):
        a = EdgeAssignment.from_records([(u, v, 0) for u, v in STAR], 1)
        assert replication_factor(a, 9) == pytest.approx(1.0)

    def test_triangle_one_edge_each(self):
        a = EdgeAssignment.from_records([(0, 1, 0), (1, 2, 1), (0, 2, 2)], 3)
        assert replication_factor(a, 3) == pytest.approx(2.0)
        assert replica_counts(a, 3).tolist() == [2, 2, 2]

    def test_matches_cover_bitsets(self):
        a = star_split()
        cover = np.zeros((2, 9), dtype=bool)
        for u, v, p in a.records():
            cover[p, u] = cover[p, v] = True
        assert rf_from_cover(cover, 9) == pytest.approx(replication_factor(a, 9))

    def test_partition_id_out_of_range(self):
        a = EdgeAssignment.from_records([(0, 1, 0), (1, 2, 3)], 2)
        with pytest.raises(ValidationFailedError):
            replication_factor(a, 3)

    def test_no_vertices(self):
        a = EdgeAssignment.from_records([], 2)
        assert replication_factor(a, 0) == 0.0


class TestBalance:
    """Test edge and vertex balance."""

    def test_edge_balance(self):
        assert edge_balance(np.array([3, 1]), 4) == pytest.approx(1.5)
        assert edge_balance(np.array([2, 2]), 4) == pytest.approx(1.0)
        assert edge_balance(np.array([0, 0]), 0) == 0.0

    def test_vertex_balance_from_counts(self):
        assert vertex_balance(np.array([10, 30])) == pytest.approx(0.5)
        assert vertex_balance(np.array([7, 7, 7])) == 0.0

    def test_vertex_balance_of_star(self):
        assert cover_counts(star_split()).tolist() == [5, 5]
        assert vertex_balance(star_split()) == 0.0

    def test_vertex_balance_count_mismatch(self):
        with pytest.raises(ValueError):
            vertex_balance(np.array([1, 2]), k=3)

    def test_quality_metrics(self):
        q = quality_metrics(star_split(), 9)
        assert q.sizes == [4, 4]
        assert q.cover_counts == [5, 5]
        assert q.edge_balance == pytest.approx(1.0)
        assert q.replication_factor == pytest.approx(10 / 9)


class TestValidate:
    """Test exactly-once validation."""

    def test_passes_with_any_orientation(self):
        records = [(v, u, p) for u, v, p in star_split().records()]
        report = validate(EdgeAssignment.from_records(records, 2), ArrayEdgeSource(STAR))
        assert report.passed
        assert report.expected_edges == 8

    def test_missing_edge(self):
        a = EdgeAssignment.from_records(star_split().records()[:-1], 2)
        report = validate(a, ArrayEdgeSource(STAR))
        assert not report.passed
        assert report.missing == 1

    def test_duplicated_edge(self):
        records = star_split().records()
        a = EdgeAssignment.from_records(records + [records[0]], 2)
        report = validate(a, ArrayEdgeSource(STAR))
        assert report.duplicated == 1
        assert report.missing == 0

    def test_alien_edge(self):
        a = EdgeAssignment.from_records(star_split().records() + [(3, 4, 1)], 2)
        report = validate(a, ArrayEdgeSource(STAR))
        assert report.alien == 1

    def test_invalid_partition(self):
        records = star_split().records()
        records[0] = (records[0][0], records[0][1], 2)
        report = validate(EdgeAssignment.from_records(records, 2), ArrayEdgeSource(STAR))
        assert report.invalid_partition == 1
        assert not report.passed

    def test_parallel_edges_and_self_loops(self):
        edges = [(0, 1), (1, 0), (2, 2), (1, 2)]
        a = EdgeAssignment.from_records([(0, 1, 0), (0, 1, 1), (1, 2, 1)], 2)
        assert validate(a, ArrayEdgeSource(edges)).passed
        a = EdgeAssignment.from_records([(0, 1, 0), (1, 2, 1)], 2)
        assert validate(a, ArrayEdgeSource(edges)).missing == 1

    def test_raise_on_failure(self):
        a = EdgeAssignment.from_records(star_split().records()[:-1], 2)
        with pytest.raises(ValidationFailedError) as exc:
            validate(a, ArrayEdgeSource(STAR), raise_on_failure=True)
        assert exc.value.report.missing == 1
        assert "missing=1" in str(exc.value)


class TestDiagnostics:
    """Test degree-bucket and core/secondary tables."""

    def test_degree_buckets_on_star(self):
        records = [(0, i, 0 if i <= 10 else 1) for i in range(1, 21)]
        a = EdgeAssignment.from_records(records, 2)
        degrees = np.array([20] + [1] * 20)
        buckets = degree_bucket_report(a, degrees)
        assert [(b.low, b.high) for b in buckets] == [(1, 10), (11, 100)]
        assert buckets[0].vertices == 20
        assert buckets[0].mean_replication == pytest.approx(1.0)
        assert buckets[1].vertices == 1
        assert buckets[1].mean_replication == pytest.approx(2.0)

    def test_degree_buckets_empty(self):
        a = EdgeAssignment.from_records([], 1)
        assert degree_bucket_report(a, np.zeros(3, dtype=np.int64)) == []

    def test_core_secondary_degrees(self):
        core = np.array([True, False, False, False])
        cover = np.array([[True, True, True, False]])
        degrees = np.array([2, 1, 1, 0])
        result = core_secondary_degrees(core, cover, degrees, mean_degree=4 / 3)
        assert result.core_vertices == 1
        assert result.secondary_vertices == 2
        assert result.core_avg_degree == pytest.approx(2.0)
        assert result.secondary_avg_degree == pytest.approx(1.0)
        assert result.core_normalized == pytest.approx(1.5)
        assert result.secondary_normalized == pytest.approx(0.75)
