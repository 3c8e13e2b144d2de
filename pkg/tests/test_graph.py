"""
Tests for ingestion: degrees, classification, pruned CSR, edge files and
tau planning.
"""

import math

import numpy as np
import pytest

from hep_partitioner.core.errors import ConfigurationError, IngestionError
from hep_partitioner.graph import (
    ArrayEdgeSource,
    BinaryEdgeFile,
    build_pruned_csr,
    classify_vertices,
    compute_degrees,
    convert_text_edge_list,
    estimate_memory,
    estimate_memory_breakdown,
    plan_tau,
    write_edge_list,
)
from hep_partitioner.graph.models import tau_from_cutoff
from hep_partitioner.oracle import gen_power_law


class TestDegrees:
    """Test the first ingestion pass."""

    def test_two_hub_mean_degree(self, two_hub_stats):
        assert two_hub_stats.num_vertices == 9
        assert two_hub_stats.num_edges == 11
        assert two_hub_stats.mean_degree == pytest.approx(22 / 9)
        assert two_hub_stats.degrees.tolist() == [2, 2, 1, 5, 4, 2, 2, 2, 2]

    def test_empty_source(self):
        stats = compute_degrees(ArrayEdgeSource([]))
        assert stats.num_edges == 0
        assert stats.num_active_vertices == 0
        assert stats.mean_degree == 0.0

    def test_path_degrees(self):
        stats = compute_degrees(ArrayEdgeSource([(0, 1), (1, 2), (2, 3)]))
        assert stats.degrees.tolist() == [1, 2, 2, 1]
        assert stats.mean_degree == pytest.approx(1.5)

    def test_self_loops_skipped(self):
        stats = compute_degrees(ArrayEdgeSource([(0, 1), (2, 2), (1, 1)]))
        assert stats.num_edges == 1
        assert stats.num_self_loops == 2
        assert stats.num_vertices == 3
        assert stats.num_active_vertices == 2

    def test_chunking_does_not_change_result(self):
        edges = gen_power_law(300, 1200, seed=3)
        whole = compute_degrees(ArrayEdgeSource(edges))
        chunked = compute_degrees(ArrayEdgeSource(edges), chunk_edges=17)
        assert np.array_equal(whole.degrees, chunked.degrees)
        assert np.array_equal(whole.out_degrees, chunked.out_degrees)
        assert whole.histogram == chunked.histogram

    def test_volume_invariants(self, two_hub_stats):
        assert int(two_hub_stats.degrees.sum()) == 2 * two_hub_stats.num_edges
        assert np.all(np.diff(two_hub_stats.suffix_volume) > 0)
        assert two_hub_stats.volume_at_most(two_hub_stats.max_degree) == 2 * two_hub_stats.num_edges
        assert two_hub_stats.volume_at_most(2) == 13


class TestClassification:
    """Test high/low degree classification."""

    def test_two_hub_tau_1_5(self, two_hub_stats):
        highs = classify_vertices(two_hub_stats, 1.5)
        assert np.flatnonzero(highs.membership).tolist() == [3, 4]
        assert highs.side_degrees == {3: 5, 4: 4}
        assert highs.threshold_degree == 4
        assert 3 in highs and 0 not in highs

    def test_boundary_is_low(self):
        # degrees 3, 2, 2, 1: mean 2.0, so tau 1.5 puts the threshold at exactly 3.0
        stats = compute_degrees(ArrayEdgeSource([(0, 1), (0, 2), (0, 3), (1, 2)]))
        assert not classify_vertices(stats, 1.5).membership.any()
        assert classify_vertices(stats, 1.4).membership.tolist() == [True, False, False, False]

    def test_infinite_tau(self, two_hub_stats):
        highs = classify_vertices(two_hub_stats, math.inf)
        assert len(highs) == 0
        assert highs.threshold_degree is None

    def test_non_positive_tau_rejected(self, two_hub_stats):
        with pytest.raises(ValueError):
            classify_vertices(two_hub_stats, 0)


class TestPrunedCSR:
    """Test the second ingestion pass."""

    def test_two_hub_pruning(self, two_hub_edges, two_hub_stats, tmp_path):
        source = ArrayEdgeSource(two_hub_edges)
        highs = classify_vertices(two_hub_stats, 1.5)
        csr, spill = build_pruned_csr(source, two_hub_stats, highs, tmp_path / "h2h.bin")

        assert len(csr.column) == 13
        assert spill.count == 1
        assert csr.num_inmem_edges == 10
        assert BinaryEdgeFile(spill.path).read_all().tolist() == [[3, 4]]

        # high-degree vertices own no entries
        assert csr.valid_degree(3) == 0 and csr.valid_degree(4) == 0
        # vertex 0: out-entry 1 from (0,1), in-entry 3 from (3,0)
        assert csr.out_neighbors(0).tolist() == [1]
        assert csr.in_neighbors(0).tolist() == [3]

    def test_no_pruning_at_infinite_tau(self, two_hub_edges, two_hub_stats, tmp_path):
        source = ArrayEdgeSource(two_hub_edges)
        highs = classify_vertices(two_hub_stats, math.inf)
        csr, spill = build_pruned_csr(source, two_hub_stats, highs, tmp_path / "h2h.bin")
        assert len(csr.column) == 22
        assert spill.count == 0
        assert list(spill.iter_chunks()) == []

    def test_reversed_duplicate_is_two_edges(self, tmp_path):
        source = ArrayEdgeSource([(0, 1), (1, 0)])
        stats = compute_degrees(source)
        csr, _ = build_pruned_csr(source, stats, classify_vertices(stats, math.inf), tmp_path / "s.bin")
        assert csr.num_inmem_edges == 2
        assert csr.out_neighbors(0).tolist() == [1]
        assert csr.in_neighbors(0).tolist() == [1]
        assert len(csr.column) == 4

    def test_direction_and_regions(self, tmp_path):
        edges = gen_power_law(200, 800, seed=5)
        source = ArrayEdgeSource(edges)
        stats = compute_degrees(source)
        highs = classify_vertices(stats, 1.0)
        csr, spill = build_pruned_csr(source, stats, highs, tmp_path / "s.bin", chunk_edges=64)

        assert csr.num_inmem_edges + spill.count == stats.num_edges
        for v in range(stats.num_vertices):
            if highs.membership[v]:
                assert csr.valid_degree(v) == 0
                assert csr.full_degree(v) == 0
            else:
                assert csr.valid_degree(v) == stats.degrees[v]
                assert csr.full_degree(v) == stats.degrees[v]

        # every low-degree out-entry corresponds to an input edge in that orientation
        pairs = {(int(u), int(v)) for u, v in edges}
        for v in range(stats.num_vertices):
            for u in csr.out_neighbors(v).tolist():
                assert (v, u) in pairs

    def test_deterministic(self, tmp_path):
        edges = gen_power_law(150, 600, seed=9)
        source = ArrayEdgeSource(edges)
        stats = compute_degrees(source)
        highs = classify_vertices(stats, 1.0)
        a, sa = build_pruned_csr(source, stats, highs, tmp_path / "a.bin")
        b, sb = build_pruned_csr(source, stats, highs, tmp_path / "b.bin", chunk_edges=7)
        assert np.array_equal(a.column, b.column)
        assert sa.path.read_bytes() == sb.path.read_bytes()


class TestEdgeFiles:
    """Test the binary edge-list format."""

    def test_write_and_read(self, tmp_path, two_hub_edges):
        path = tmp_path / "g.bin"
        assert write_edge_list(path, two_hub_edges) == 11
        assert path.stat().st_size == 11 * 8
        assert BinaryEdgeFile(path).read_all().tolist() == two_hub_edges.tolist()

    def test_eight_byte_ids(self, tmp_path):
        path = tmp_path / "g.bin"
        write_edge_list(path, [(0, 2**40)], id_bytes=8)
        assert BinaryEdgeFile(path, id_bytes=8).read_all().tolist() == [[0, 2**40]]

    def test_truncated_record(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_bytes(b"\x00" * 20)
        with pytest.raises(IngestionError) as exc:
            BinaryEdgeFile(path)
        assert exc.value.offset == 16
        assert "16" in str(exc.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestionError):
            BinaryEdgeFile(tmp_path / "nope.bin")

    def test_ids_too_wide(self, tmp_path):
        with pytest.raises(ConfigurationError):
            write_edge_list(tmp_path / "g.bin", [(0, 2**33)], id_bytes=4)

    def test_convert_text(self, tmp_path):
        src = tmp_path / "g.txt"
        src.write_text("# comment\n0 1\n1 2 0.5\n% other comment\n2 3\n")
        assert convert_text_edge_list(src, tmp_path / "g.bin") == 3
        assert BinaryEdgeFile(tmp_path / "g.bin").read_all().tolist() == [[0, 1], [1, 2], [2, 3]]


class TestMemoryEstimate:
    """Test the footprint formula."""

    def test_two_hub_estimate(self, two_hub_stats):
        assert estimate_memory(two_hub_stats, 1.5, 2, 4) == 272

    def test_breakdown_terms(self):
        est = estimate_memory_breakdown(9, 13, 2, 4)
        assert est.column == 52
        assert est.index_arrays + est.size_fields + est.heap == 216
        assert est.bitsets == 4
        assert est.total == 272

    def test_unpruned(self, two_hub_stats):
        assert estimate_memory(two_hub_stats, math.inf, 1, 4) == 22 * 4 + 6 * 9 * 4 + math.ceil(9 * 2 / 8)

    def test_empty_graph(self):
        assert estimate_memory(compute_degrees(ArrayEdgeSource([])), math.inf, 4, 4) == 0

    def test_non_increasing_with_smaller_tau(self, two_hub_stats):
        taus = [math.inf, 3.0, 2.0, 1.5, 1.0, 0.5, 0.1]
        estimates = [estimate_memory(two_hub_stats, t, 2, 4) for t in taus]
        assert estimates == sorted(estimates, reverse=True)

    def test_invalid_arguments(self, two_hub_stats):
        with pytest.raises(ValueError):
            estimate_memory(two_hub_stats, 1.5, 0, 4)
        with pytest.raises(ValueError):
            estimate_memory(two_hub_stats, 1.5, 2, 2)


class TestPlanTau:
    """Test tau planning against a budget."""

    def test_two_hub_budget(self, two_hub_stats):
        plan = plan_tau(two_hub_stats, 280, 2, 4)
        assert plan.feasible
        assert plan.cutoff == 2
        assert plan.estimate_bytes == 272
        low, high = plan.tau_range
        assert low <= 1.5 < high
        assert low <= plan.tau < high
        # the planned tau yields the same split as tau = 1.5
        planned = classify_vertices(two_hub_stats, plan.tau).membership
        assert np.array_equal(planned, classify_vertices(two_hub_stats, 1.5).membership)
        assert estimate_memory(two_hub_stats, plan.tau, 2, 4) <= 280

    def test_planned_tau_is_the_largest_for_its_split(self, two_hub_stats):
        plan = plan_tau(two_hub_stats, 280, 2, 4)
        mean = two_hub_stats.mean_degree
        _, high = plan.tau_range
        assert plan.tau == pytest.approx(4 / mean)
        assert plan.tau == pytest.approx(high)
        assert plan.tau > 1.5
        # degree-4 hub stays high at the planned tau
        assert 4 > plan.tau * mean
        assert classify_vertices(two_hub_stats, plan.tau).membership.sum() == 2

    def test_tau_from_cutoff(self):
        mean = 22 / 9
        tau = tau_from_cutoff(2, 4, mean)
        assert 2 <= tau * mean < 4
        assert tau == pytest.approx(18 / 11)
        assert math.isinf(tau_from_cutoff(5, None, mean))
        assert math.isinf(tau_from_cutoff(0, 3, 0.0))

    def test_large_budget_means_no_pruning(self, two_hub_stats):
        plan = plan_tau(two_hub_stats, 10**12, 2, 4)
        assert plan.feasible
        assert math.isinf(plan.tau)

    def test_infeasible(self, two_hub_stats):
        plan = plan_tau(two_hub_stats, 1, 2, 4)
        assert not plan.feasible
        assert plan.tau is None
        assert plan.fixed_bytes == 220

    def test_footprint_table(self, two_hub_stats):
        plan = plan_tau(two_hub_stats, 280, 2, 4)
        assert [row.cutoff for row in plan.footprint] == [0, 1, 2, 4, 5]
        assert [row.estimate_bytes for row in plan.footprint] == [220, 224, 272, 288, 308]
        assert [row.feasible for row in plan.footprint] == [True, True, True, False, False]
        assert plan.planning_seconds >= 0

    def test_invalid_budget(self, two_hub_stats):
        with pytest.raises(ValueError):
            plan_tau(two_hub_stats, 0, 2, 4)
