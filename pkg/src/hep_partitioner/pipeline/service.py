"""
Partitioning pipeline: ingestion, tau planning, NE++, streaming, metrics.
"""

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, Optional

import numpy as np

from hep_partitioner.assignment.store import (
    AssignmentSink,
    FileAssignmentSink,
    MemoryAssignmentSink,
    read_assignment,
)
from hep_partitioner.core.config import AppSettings, get_settings
from hep_partitioner.core.errors import IngestionError, InfeasiblePlanError
from hep_partitioner.graph.csr import build_pruned_csr
from hep_partitioner.graph.degrees import classify_vertices, compute_degrees
from hep_partitioner.graph.edge_io import ArrayEdgeSource, BinaryEdgeFile
from hep_partitioner.graph.planner import estimate_memory_breakdown, low_degree_volume, plan_tau
from hep_partitioner.metrics.calculator import quality_metrics, rf_from_cover, validate
from hep_partitioner.metrics.diagnostics import core_secondary_degrees, degree_bucket_report
from hep_partitioner.metrics.models import MemoryReport, PartitionReport
from hep_partitioner.nepp.engine import partition_in_memory
from hep_partitioner.oracle.reference_ne import reference_ne
from hep_partitioner.streaming.models import DegreeLookup, StreamingState
from hep_partitioner.streaming.partitioner import degree_hash_assign, random_assign, stream_partition

from .models import PipelineMode, RunConfig, RunResult

logger = logging.getLogger(__name__)


class HepPipeline:
    """
    Runs one partitioning job described by a RunConfig.

    The hep mode follows the order prune -> NE++ -> HDRF streaming; the other
    modes run the reference and baseline partitioners on the same input so
    their stats documents are directly comparable.
    """

    def __init__(self, config: RunConfig, settings: Optional[AppSettings] = None):
        self.config = config
        self.settings = settings or get_settings()

        ingest = self.settings.ingest
        partition = self.settings.partition
        self.id_bytes = config.id_bytes or ingest.id_bytes
        self.chunk_edges = ingest.chunk_edges
        self.alpha = config.alpha if config.alpha is not None else partition.alpha
        self.debug = config.debug if config.debug is not None else partition.debug
        self.removal_strategy = config.removal_strategy or partition.removal_strategy
        self.keep_spill = config.keep_spill if config.keep_spill is not None else ingest.keep_spill
        self.timings: Dict[str, float] = {}

    @contextmanager
    def _timed(self, phase: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            self.timings[phase] = time.perf_counter() - started

    def spill_path(self) -> Path:
        """Where the high-to-high edges are written."""
        if self.config.spill is not None:
            return self.config.spill
        name = f"{self.config.input.stem}.h2h.bin"
        if self.settings.ingest.spill_dir:
            return Path(self.settings.ingest.spill_dir) / name
        if self.config.output is not None:
            return self.config.output.parent / name
        return self.config.input.parent / name

    def _open_sink(self) -> AssignmentSink:
        if self.config.output is not None:
            return FileAssignmentSink(self.config.output, self.config.k, id_bytes=self.id_bytes)
        return MemoryAssignmentSink(self.config.k)

    def _collect(self, sink: AssignmentSink):
        sink.close()
        if isinstance(sink, MemoryAssignmentSink):
            return sink.to_assignment()
        return read_assignment(self.config.output, expected_k=self.config.k)

    def run(self) -> RunResult:
        """
        Execute the configured mode and build the stats document.

        Raises:
            InfeasiblePlanError: tau 'auto' and no tau fits the memory budget
            IngestionError: Unreadable input or unwritable outputs
            ValidationFailedError: validate_output set and the assignment is wrong
        """
        cfg = self.config
        logger.info(f"Starting {cfg.mode.value} run on {cfg.input} with k={cfg.k}")
        started = time.perf_counter()

        source = BinaryEdgeFile(cfg.input, id_bytes=self.id_bytes)
        with self._timed("degrees"):
            stats = compute_degrees(source, self.chunk_edges)

        plan = None
        tau: Optional[float] = cfg.tau if not cfg.auto_tau else None
        if cfg.auto_tau:
            with self._timed("planning"):
                plan = plan_tau(stats, cfg.memory_budget, cfg.k, self.id_bytes)
            if not plan.feasible:
                raise InfeasiblePlanError(
                    f"Memory budget {cfg.memory_budget} B is below the fixed cost "
                    f"{plan.fixed_bytes} B of {stats.num_vertices} vertex ids"
                )
            tau = plan.tau

        report_fields: Dict = {}
        spill_path: Optional[Path] = None
        sink = self._open_sink()

        try:
            if cfg.mode == PipelineMode.HEP:
                spill_path = self.spill_path()
                report_fields = self._run_hep(source, stats, tau, sink, spill_path)
            elif cfg.mode == PipelineMode.REFERENCE_NE:
                tau = None
                with self._timed("partitioning"):
                    state = reference_ne(source, cfg.k, sink, num_vertices=stats.num_vertices)
                report_fields["init_exhausted"] = state.diagnostics.init_exhausted
            elif cfg.mode == PipelineMode.SIMPLE_HYBRID:
                report_fields = self._run_simple_hybrid(source, stats, tau, sink)
            elif cfg.mode == PipelineMode.RANDOM:
                tau = None
                with self._timed("partitioning"):
                    random_assign(source, cfg.k, cfg.seed, sink, chunk_edges=self.chunk_edges)
            else:
                tau = None
                with self._timed("partitioning"):
                    degree_hash_assign(
                        source,
                        DegreeLookup.from_degrees(stats.degrees),
                        cfg.k,
                        sink,
                        chunk_edges=self.chunk_edges,
                    )
        except Exception as e:
            logger.error(f"{cfg.mode.value} run failed after {sink.total} records: {e}")
            sink.discard()
            if spill_path is not None and not self.keep_spill:
                spill_path.unlink(missing_ok=True)
            raise

        assignment = self._collect(sink)

        with self._timed("metrics"):
            quality = quality_metrics(assignment, stats.num_active_vertices)
            buckets = degree_bucket_report(assignment, stats.degrees)
            if cfg.validate_output:
                validate(assignment, source, raise_on_failure=True)

        if spill_path is not None and not self.keep_spill:
            spill_path.unlink(missing_ok=True)

        self.timings["total"] = time.perf_counter() - started
        report = PartitionReport(
            mode=cfg.mode.value,
            k=cfg.k,
            tau=tau,
            alpha=self.alpha,
            num_edges=stats.num_edges,
            num_vertices=stats.num_vertices,
            num_active_vertices=stats.num_active_vertices,
            num_self_loops=stats.num_self_loops,
            quality=quality,
            degree_buckets=buckets,
            timings=dict(self.timings),
            **report_fields,
        )
        self._write_stats(report)

        logger.info(
            f"Finished {cfg.mode.value}: RF={quality.replication_factor:.4f} "
            f"edge balance={quality.edge_balance:.4f} in {self.timings['total']:.3f}s"
        )
        return RunResult(
            report=report,
            assignment=assignment,
            output=cfg.output,
            spill_path=spill_path if self.keep_spill else None,
            plan=plan,
        )

    def _run_hep(self, source, stats, tau: float, sink: AssignmentSink, spill_path: Path) -> Dict:
        cfg = self.config
        partition = self.settings.partition

        highs = classify_vertices(stats, tau)
        with self._timed("build"):
            csr, spill = build_pruned_csr(
                source, stats, highs, spill_path, id_bytes=self.id_bytes, chunk_edges=self.chunk_edges
            )

        with self._timed("nepp"):
            state = partition_in_memory(
                csr, highs, cfg.k, sink, removal_strategy=self.removal_strategy, debug=self.debug
            )

        core_vs_secondary = core_secondary_degrees(
            state.core, state.cover, stats.degrees, stats.mean_degree
        )

        estimate = estimate_memory_breakdown(
            stats.num_vertices, low_degree_volume(stats, tau), cfg.k, self.id_bytes
        )
        measured = csr.structure_bytes()
        measured["bitsets"] = int(state.core.nbytes + state.cover.nbytes)
        memory = MemoryReport(
            estimate=estimate,
            estimate_total=estimate.total,
            measured=measured,
            measured_total=sum(measured.values()),
        )

        st = StreamingState.fresh(
            cfg.k,
            stats.num_vertices,
            DegreeLookup.from_csr(csr, highs),
            stats.num_edges,
            lam=partition.hdrf_lambda,
            alpha=self.alpha,
            epsilon=partition.hdrf_epsilon,
            cover=state.cover,
            sizes=state.sizes,
        )
        with self._timed("streaming"):
            stream_partition(spill, st, sink, chunk_edges=self.chunk_edges)

        diag = state.diagnostics
        return {
            "high_degree_vertices": len(highs),
            "h2h_edges": spill.count,
            "rf_from_cover": rf_from_cover(st.cover, stats.num_active_vertices),
            "cleaned_fraction": diag.cleaned_fraction,
            "cleaned_per_partition": diag.cleaned_per_partition,
            "fallback_count": st.fallback_count,
            "init_exhausted": diag.init_exhausted,
            "sealed_reads": diag.sealed_reads,
            "memory": memory,
            "core_vs_secondary": core_vs_secondary,
        }

    def _run_simple_hybrid(self, source, stats, tau: float, sink: AssignmentSink) -> Dict:
        """Reference NE on the in-memory edges, random streaming on the h2h edges."""
        cfg = self.config
        highs = classify_vertices(stats, tau)

        edges = source.read_all().astype(np.int64)
        edges = edges[edges[:, 0] != edges[:, 1]]
        h2h = highs.membership[edges[:, 0]] & highs.membership[edges[:, 1]] if len(edges) else np.zeros(0, bool)

        with self._timed("partitioning"):
            state = reference_ne(ArrayEdgeSource(edges[~h2h]), cfg.k, sink, num_vertices=stats.num_vertices)
        with self._timed("streaming"):
            random_assign(ArrayEdgeSource(edges[h2h]), cfg.k, cfg.seed, sink)

        return {
            "high_degree_vertices": len(highs),
            "h2h_edges": int(h2h.sum()),
            "init_exhausted": state.diagnostics.init_exhausted,
        }

    def _write_stats(self, report: PartitionReport) -> None:
        if self.config.stats is None:
            return
        path = self.config.stats
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(report.model_dump_json(indent=2))
        except OSError as e:
            raise IngestionError(f"Cannot write stats document {path}: {e}") from e
        logger.info(f"Wrote stats to {path}")


def run_partition(config: RunConfig, settings: Optional[AppSettings] = None) -> RunResult:
    """Convenience wrapper: build a pipeline and run it."""
    return HepPipeline(config, settings=settings).run()
