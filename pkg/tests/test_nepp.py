"""
Tests for the NE++ expansion engine.
"""

import math

import numpy as np
import pytest

from hep_partitioner.assignment import MemoryAssignmentSink
from hep_partitioner.graph import ArrayEdgeSource, build_pruned_csr, classify_vertices, compute_degrees
from hep_partitioner.metrics import rf_from_cover, replication_factor, validate
from hep_partitioner.nepp import ExpansionEngine
from hep_partitioner.oracle import disjoint_union, gen_named, gen_power_law, gen_random


def corpus():
    return [
        ("path", gen_named("path", 12)),
        ("star", gen_named("star", 15)),
        ("clique", gen_named("clique", 7)),
        ("grid", gen_named("grid", 5)),
        ("disconnected", disjoint_union([gen_named("path", 6), gen_named("clique", 5), gen_named("star", 6)])),
        ("random", gen_random(60, 150, seed=4)),
        ("power-law", gen_power_law(250, 1000, seed=11)),
        ("power-law-exp", gen_power_law(250, 600, exponent=2.2, seed=2)),
    ]


def make_engine(edges, k, tau=math.inf, tmp_path=None, debug=False):
    source = ArrayEdgeSource(edges)
    stats = compute_degrees(source)
    highs = classify_vertices(stats, tau)
    csr, _ = build_pruned_csr(source, stats, highs, tmp_path / "spill.bin")
    sink = MemoryAssignmentSink(k)
    return ExpansionEngine(csr, highs, k, sink, debug=debug), csr, sink


class TestHandTrace:
    """Test NE++ on the five-edge example traced by hand."""

    def test_records(self, run_hep, example_edges):
        run = run_hep(example_edges, k=2)
        assert run.records == [(0, 1, 0), (0, 2, 0), (1, 2, 0), (2, 3, 1), (3, 4, 1)]
        assert replication_factor(run.assignment, 5) == pytest.approx(1.2)

    def test_clean_up_result(self, run_hep, example_edges):
        run = run_hep(example_edges, k=2)
        csr = run.csr
        assert csr.valid_degree(1) == 0
        assert csr.out_neighbors(2).tolist() == [3]
        assert csr.in_neighbors(2).tolist() == []
        assert run.state.diagnostics.cleaned_per_partition == [4]
        assert run.state.diagnostics.cleaned_fraction == pytest.approx(4 / 10)

    def test_first_expansion_steps(self, example_edges, tmp_path):
        engine, _, sink = make_engine(example_edges, 2, tmp_path=tmp_path)
        assert engine.initialize()
        assert engine.init_cursor == 0
        seed, key = engine.heap.pop()
        assert (seed, key) == (0, 2)

        engine.move_to_core(seed)
        # 1 entered with d_ext 1, then dropped to 0 when 2 joined
        assert engine.heap.key(1) == 0
        assert engine.heap.key(2) == 1
        assert sink.records == [(0, 1, 0), (0, 2, 0), (1, 2, 0)]

    def test_move_to_secondary_without_interior_neighbors(self, example_edges, tmp_path):
        engine, _, sink = make_engine(example_edges, 2, tmp_path=tmp_path)
        engine.move_to_secondary(3)
        assert engine.heap.key(3) == 2
        assert sink.records == []


class TestBasicShapes:
    """Test NE++ on graphs with known outcomes."""

    def test_single_partition(self, run_hep):
        edges = gen_named("clique", 5)
        run = run_hep(edges, k=1)
        assert run.state.sizes.tolist() == [10]
        assert replication_factor(run.assignment, 5) == pytest.approx(1.0)

    def test_star_split(self, run_hep):
        run = run_hep(gen_named("star", 8), k=2)
        assert run.state.sizes.tolist() == [4, 4]
        assert replication_factor(run.assignment, 9) == pytest.approx(10 / 9)
        assert run.state.diagnostics.spilled_assignments == 4

    def test_disconnected_components(self, run_hep):
        edges = disjoint_union([gen_named("clique", 3), gen_named("clique", 3)])
        run = run_hep(edges, k=2)
        assert [p for _, _, p in run.records] == [0, 0, 0, 1, 1, 1]
        assert replication_factor(run.assignment, 6) == pytest.approx(1.0)

    def test_isolated_ids_join_core(self, run_hep):
        run = run_hep(np.array([(2, 3), (3, 4)]), k=2)
        assert run.state.core[0] and run.state.core[1]
        assert run.state.diagnostics.seeds >= 1

    def test_more_partitions_than_edges(self, run_hep):
        edges = gen_named("path", 3)
        run = run_hep(edges, k=5)
        assert validate(run.assignment, ArrayEdgeSource(edges)).passed
        assert run.state.diagnostics.init_exhausted

    def test_high_degree_vertices_never_expanded(self, run_hep, two_hub_edges):
        run = run_hep(two_hub_edges, k=2, tau=1.5, debug=True)
        assert not run.state.core[3] and not run.state.core[4]
        assert run.state.capacity == 5
        assert validate(run.assignment, ArrayEdgeSource(two_hub_edges)).passed
        # the only h2h edge is streamed
        assert run.spill.count == 1

    def test_cover_records_assigned_endpoints(self, run_hep):
        edges = gen_power_law(120, 480, seed=1)
        run = run_hep(edges, k=4, tau=2.0)
        cover = run.streaming.cover
        for u, v, p in run.records:
            assert cover[p, u] and cover[p, v]
        assert rf_from_cover(cover, run.stats.num_active_vertices) == pytest.approx(
            replication_factor(run.assignment, run.stats.num_active_vertices)
        )


class TestCorpus:
    """Test exactly-once assignment and balance over many graphs, k and tau."""

    @pytest.mark.parametrize("k", [1, 2, 3, 8, 32])
    @pytest.mark.parametrize("tau", [0.5, 1.0, 10.0, 100.0, math.inf])
    def test_exactly_once_and_balance(self, run_hep, k, tau):
        for name, edges in corpus():
            run = run_hep(edges, k=k, tau=tau, debug=True)
            report = validate(run.assignment, ArrayEdgeSource(edges))
            assert report.passed, f"{name}: {report.summary()}"

            state = run.state
            diag = state.diagnostics
            assert diag.sealed_reads == 0
            assert diag.cleaned_fraction <= 1.0
            assert all(s <= state.capacity for s in state.sizes.tolist())
            if not diag.init_exhausted:
                assert all(s == state.capacity for s in state.sizes.tolist()[:-1]), name

            st = run.streaming
            assert st.fallback_count == 0
            # tiny graphs: the in-memory capacity can round above alpha|E|/k
            assert max(st.sizes.tolist()) <= max(state.capacity, math.ceil(st.max_size_bound)), name

            rf = replication_factor(run.assignment, run.stats.num_active_vertices)
            assert 1.0 <= rf <= k

    @pytest.mark.parametrize("k", [2, 8, 32])
    def test_cleaned_fraction_below_one(self, run_hep, k):
        run = run_hep(gen_power_law(400, 2000, seed=k), k=k, tau=1.0)
        assert 0.0 < run.state.diagnostics.cleaned_fraction < 1.0
        assert len(run.state.diagnostics.cleaned_per_partition) == k - 1

    def test_swap_removal_is_valid(self, run_hep):
        for name, edges in corpus():
            for k in (2, 8):
                run = run_hep(edges, k=k, tau=1.0, removal="swap", debug=True)
                assert validate(run.assignment, ArrayEdgeSource(edges)).passed, name

    def test_deterministic(self, run_hep):
        edges = gen_power_law(300, 1500, seed=8)
        first = run_hep(edges, k=8, tau=1.0)
        second = run_hep(edges, k=8, tau=1.0)
        assert first.records == second.records

    def test_invalid_k(self, example_edges, tmp_path):
        with pytest.raises(ValueError):
            make_engine(example_edges, 0, tmp_path=tmp_path)


@pytest.mark.slow
class TestBalanceOnLargeGraphs:
    """Partition sizes stay within alpha|E|/k once graphs are large."""

    @pytest.mark.parametrize("seed", range(5))
    def test_sizes_within_bound(self, run_hep, seed):
        edges = gen_power_law(10_000, 100_000, seed=seed)
        run = run_hep(edges, k=32, tau=1.0)
        st = run.streaming
        assert run.stats.num_edges >= 20_000
        assert st.fallback_count == 0
        assert max(st.sizes.tolist()) <= st.max_size_bound
        assert max(run.state.sizes.tolist()) <= st.max_size_bound
