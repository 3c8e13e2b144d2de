#!/usr/bin/env python3
"""
hepctl - hybrid edge partitioner CLI

Subcommands:
- partition: run HEP (or a baseline) on a binary edge list
- plan-tau: choose tau for a memory budget
- validate / stats: check and measure an assignment file
- gen / convert: produce binary edge lists
- version
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError

from hep_partitioner import __version__
from hep_partitioner.assignment.store import read_assignment
from hep_partitioner.core.config import RemovalStrategy, get_settings
from hep_partitioner.core.errors import (
    ConfigurationError,
    HepError,
    InfeasiblePlanError,
    IngestionError,
    ValidationFailedError,
)
from hep_partitioner.core.logging_setup import setup_logging
from hep_partitioner.graph.degrees import compute_degrees
from hep_partitioner.graph.edge_io import BinaryEdgeFile, convert_text_edge_list, write_edge_list
from hep_partitioner.graph.planner import plan_tau
from hep_partitioner.metrics.calculator import quality_metrics, validate
from hep_partitioner.metrics.diagnostics import degree_bucket_report
from hep_partitioner.oracle.generators import gen_named, gen_power_law, gen_random
from hep_partitioner.pipeline.models import PipelineMode, RunConfig, parse_byte_size
from hep_partitioner.pipeline.service import HepPipeline

logger = logging.getLogger(__name__)


class Colors:
    """ANSI color codes for terminal output."""

    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    RESET = "\033[0m"
    BOLD = "\033[1m"


def colorize(text: str, color: str) -> str:
    """Colorize text if stdout is a TTY."""
    if sys.stdout.isatty():
        return f"{color}{text}{Colors.RESET}"
    return text


def _id_bytes(args) -> int:
    return args.id_bytes or get_settings().ingest.id_bytes


def _format_tau(tau: Optional[float]) -> str:
    if tau is None:
        return "-"
    return "inf" if math.isinf(tau) else f"{tau:.4f}"


def cmd_partition(args) -> int:
    """
    Run the partitioning pipeline.

    Returns:
        Exit code (0 on success)
    """
    overrides: Dict[str, Any] = {
        "input": args.input,
        "k": args.k,
        "tau": args.tau,
        "memory_budget": args.memory,
        "alpha": args.alpha,
        "id_bytes": args.id_bytes,
        "output": args.output,
        "spill": args.spill,
        "stats": args.stats,
        "mode": args.mode,
        "debug": True if args.debug else None,
        "removal_strategy": args.removal,
        "keep_spill": True if args.keep_spill else None,
        "seed": args.seed,
        "validate_output": True if args.validate else None,
    }
    try:
        if args.config:
            cfg = RunConfig.from_yaml(args.config, **overrides)
        else:
            cfg = RunConfig(**{key: value for key, value in overrides.items() if value is not None})
    except ValidationError as e:
        raise ConfigurationError(f"Invalid run configuration: {e}") from e

    result = HepPipeline(cfg).run()
    report = result.report
    quality = report.quality

    print(colorize(f"\n{report.mode} partitioning, k={report.k}, tau={_format_tau(report.tau)}", Colors.BOLD))
    print(f"  edges:              {report.num_edges} ({report.h2h_edges} high-to-high)")
    print(f"  replication factor: {quality.replication_factor:.4f}")
    print(f"  edge balance:       {quality.edge_balance:.4f}")
    print(f"  vertex balance:     {quality.vertex_balance:.4f}")
    print(f"  partition sizes:    {quality.sizes}")
    if report.cleaned_fraction is not None:
        print(f"  cleaned fraction:   {report.cleaned_fraction:.4f}")
    if report.memory is not None:
        print(
            f"  memory:             estimate {report.memory.estimate_total} B, "
            f"measured {report.memory.measured_total} B"
        )
    if report.fallback_count:
        print(colorize(f"  balance fallbacks:  {report.fallback_count}", Colors.YELLOW))
    if cfg.output:
        print(f"  assignment:         {cfg.output}")
    if cfg.stats:
        print(f"  stats:              {cfg.stats}")
    return 0


def cmd_plan_tau(args) -> int:
    """
    Print the footprint table and the chosen tau.

    Returns:
        0 when a feasible tau exists, 2 otherwise
    """
    id_bytes = _id_bytes(args)
    budget = parse_byte_size(args.memory)
    stats = compute_degrees(BinaryEdgeFile(args.input, id_bytes=id_bytes), get_settings().ingest.chunk_edges)
    plan = plan_tau(stats, budget, args.k, id_bytes)

    if args.json:
        print(plan.model_dump_json(indent=2))
    else:
        print(colorize(f"\nMemory footprint (k={args.k}, {id_bytes}-byte ids, budget {budget} B)", Colors.BOLD))
        print(f"  {'cutoff':>8} {'tau from':>10} {'tau to':>10} {'entries':>12} {'bytes':>14}  fits")
        for row in plan.footprint:
            fits = colorize("yes", Colors.GREEN) if row.feasible else colorize("no", Colors.RED)
            print(
                f"  {row.cutoff:>8} {_format_tau(row.tau_low):>10} {_format_tau(row.tau_high):>10} "
                f"{row.column_entries:>12} {row.estimate_bytes:>14}  {fits}"
            )
        print()
        if plan.feasible:
            print(f"  chosen tau: {_format_tau(plan.tau)} (cutoff degree {plan.cutoff}, {plan.estimate_bytes} B)")
        print(f"  planning time: {plan.planning_seconds * 1000:.2f} ms")

    if not plan.feasible:
        raise InfeasiblePlanError(f"Fixed cost {plan.fixed_bytes} B exceeds budget {budget} B")
    return 0


def cmd_validate(args) -> int:
    """
    Check an assignment against its input edge list.

    Returns:
        0 if every edge is assigned exactly once, 1 otherwise
    """
    assignment = read_assignment(args.assignment)
    report = validate(assignment, BinaryEdgeFile(args.input, id_bytes=_id_bytes(args)))
    if report.passed:
        print(colorize(f"✓ {report.summary()}", Colors.GREEN))
        return 0
    print(colorize(f"✗ {report.summary()}", Colors.RED))
    raise ValidationFailedError(report.summary(), report=report)


def cmd_stats(args) -> int:
    """
    Print quality metrics of an assignment file as JSON.

    Returns:
        Exit code (0 on success)
    """
    assignment = read_assignment(args.assignment)
    stats = compute_degrees(BinaryEdgeFile(args.input, id_bytes=_id_bytes(args)))
    quality = quality_metrics(assignment, stats.num_active_vertices)
    document = {
        "k": assignment.k,
        "num_edges": stats.num_edges,
        "num_active_vertices": stats.num_active_vertices,
        "quality": quality.model_dump(),
        "degree_buckets": [b.model_dump() for b in degree_bucket_report(assignment, stats.degrees)],
    }
    text = json.dumps(document, indent=2)
    if args.output:
        path = Path(args.output)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        except OSError as e:
            raise IngestionError(f"Cannot write stats document {path}: {e}") from e
        print(f"Wrote stats to {args.output}")
    else:
        print(text)
    return 0


def cmd_gen(args) -> int:
    """
    Write a synthetic graph in the binary edge-list format.

    Returns:
        Exit code (0 on success)
    """
    if args.shape == "power-law":
        edges = gen_power_law(args.n, args.m, exponent=args.exponent, seed=args.seed)
    elif args.shape == "random":
        edges = gen_random(args.n, args.m, seed=args.seed)
    else:
        edges = gen_named(args.shape, args.size)
    count = write_edge_list(args.output, edges, id_bytes=_id_bytes(args))
    print(f"Wrote {count} edges to {args.output}")
    return 0


def cmd_convert(args) -> int:
    """Convert a text edge list to the binary format."""
    count = convert_text_edge_list(args.source, args.output, id_bytes=_id_bytes(args))
    print(f"Wrote {count} edges to {args.output}")
    return 0


def cmd_version(args) -> int:
    """
    Print version information.

    Returns:
        Exit code (always 0)
    """
    print(f"hepctl version {__version__}")
    print("HEP - hybrid edge partitioner for power-law graphs")
    return 0


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for hepctl."""
    parser = argparse.ArgumentParser(
        description="Hybrid edge partitioner CLI",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  hepctl partition graph.bin --k 32 --tau 10 --output graph.hepa --stats stats.json
  hepctl partition graph.bin --k 32 --tau auto --memory 2GiB
  hepctl plan-tau graph.bin --k 32 --memory 512MiB
  hepctl validate graph.hepa graph.bin
  hepctl gen power-law graph.bin --n 10000 --m 100000 --seed 1

Exit codes:
  0 success, 1 validation failure, 2 infeasible plan,
  3 I/O or configuration error (bad arguments, unreadable or unwritable files),
  4 internal invariant

Environment variables:
  HEP_LOG_LEVEL, HEP_LOG_FORMAT      # Logging (default: INFO, text)
  HEP_INGEST_ID_BYTES                # Vertex id width (default: 4)
  HEP_PARTITION_ALPHA                # Streaming balance slack (default: 1.05)
        """,
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Logging level (default: HEP_LOG_LEVEL or INFO)",
    )
    parser.add_argument("--log-format", choices=["text", "json"], default=None, help="Log line format")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # partition command
    part = subparsers.add_parser("partition", help="Partition a binary edge list")
    part.add_argument("input", type=Path, nargs="?", help="Binary edge list (may come from --config)")
    part.add_argument("-k", "--k", type=int, default=None, help="Number of partitions")
    part.add_argument("--tau", default=None, help="Threshold factor: number, 'inf' or 'auto' (default: inf)")
    part.add_argument("--memory", default=None, help="Memory budget for --tau auto (e.g. 280B, 2GiB)")
    part.add_argument("--alpha", type=float, default=None, help="Streaming balance slack (default: 1.05)")
    part.add_argument("--id-bytes", type=int, choices=[4, 8], default=None, help="Vertex id width")
    part.add_argument("--output", type=Path, default=None, help="Assignment file to write")
    part.add_argument("--spill", type=Path, default=None, help="High-to-high spill file")
    part.add_argument("--stats", type=Path, default=None, help="Stats document (JSON)")
    part.add_argument(
        "--mode",
        choices=[m.value for m in PipelineMode],
        default=None,
        help="Partitioner to run (default: hep)",
    )
    part.add_argument("--removal", choices=[r.value for r in RemovalStrategy], default=None, help="Clean-up removal strategy")
    part.add_argument("--debug", action="store_true", help="Enable invariant instrumentation")
    part.add_argument("--keep-spill", action="store_true", help="Keep the spill file")
    part.add_argument("--seed", type=int, default=None, help="Seed for random baselines")
    part.add_argument("--validate", action="store_true", help="Validate the assignment after the run")
    part.add_argument("--config", type=Path, default=None, help="YAML run configuration")

    # plan-tau command
    plan = subparsers.add_parser("plan-tau", help="Choose tau for a memory budget")
    plan.add_argument("input", type=Path, help="Binary edge list")
    plan.add_argument("--memory", required=True, help="Memory budget (e.g. 280B, 2GiB)")
    plan.add_argument("-k", "--k", type=int, required=True, help="Number of partitions")
    plan.add_argument("--id-bytes", type=int, choices=[4, 8], default=None, help="Vertex id width")
    plan.add_argument("--json", action="store_true", help="Print the plan as JSON")

    # validate command
    val = subparsers.add_parser("validate", help="Check an assignment covers every edge exactly once")
    val.add_argument("assignment", type=Path, help="Assignment file")
    val.add_argument("input", type=Path, help="Original binary edge list")
    val.add_argument("--id-bytes", type=int, choices=[4, 8], default=None, help="Vertex id width of the input")

    # stats command
    st = subparsers.add_parser("stats", help="Compute quality metrics of an assignment")
    st.add_argument("assignment", type=Path, help="Assignment file")
    st.add_argument("input", type=Path, help="Original binary edge list")
    st.add_argument("--id-bytes", type=int, choices=[4, 8], default=None, help="Vertex id width of the input")
    st.add_argument("--output", type=Path, default=None, help="Write JSON here instead of stdout")

    # gen command
    gen = subparsers.add_parser("gen", help="Generate a synthetic graph")
    gen.add_argument("shape", choices=["path", "star", "clique", "grid", "power-law", "random"])
    gen.add_argument("output", type=Path, help="Binary edge list to write")
    gen.add_argument("size", type=int, nargs="?", default=8, help="Size of a named shape (default: 8)")
    gen.add_argument("--n", type=int, default=10_000, help="Vertices (power-law, random)")
    gen.add_argument("--m", type=int, default=100_000, help="Edges (power-law, random)")
    gen.add_argument("--exponent", type=float, default=None, help="Power-law exponent (configuration model)")
    gen.add_argument("--seed", type=int, default=0, help="Generator seed")
    gen.add_argument("--id-bytes", type=int, choices=[4, 8], default=None, help="Vertex id width")

    # convert command
    conv = subparsers.add_parser("convert", help="Convert a text edge list to binary")
    conv.add_argument("source", type=Path, help="Whitespace-separated text edge list")
    conv.add_argument("output", type=Path, help="Binary edge list to write")
    conv.add_argument("--id-bytes", type=int, choices=[4, 8], default=None, help="Vertex id width")

    # version command
    subparsers.add_parser("version", help="Show version information")

    return parser


COMMANDS = {
    "partition": cmd_partition,
    "plan-tau": cmd_plan_tau,
    "validate": cmd_validate,
    "stats": cmd_stats,
    "gen": cmd_gen,
    "convert": cmd_convert,
    "version": cmd_version,
}


def main(argv=None) -> int:
    """Main entry point for hepctl CLI."""
    parser = create_parser()
    args = parser.parse_args(argv)

    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, args.log_format or settings.log_format)

    if not args.command:
        parser.print_help()
        return 0

    handler = COMMANDS.get(args.command)
    if handler is None:
        print(f"Unknown command: {args.command}", file=sys.stderr)
        return 1

    try:
        return handler(args)
    except HepError as e:
        logger.error(f"{type(e).__name__}: {e}")
        if not isinstance(e, ValidationFailedError):
            print(colorize(f"✗ {e}", Colors.RED), file=sys.stderr)
        return e.exit_code
    except (ValueError, ValidationError) as e:
        logger.error(f"Invalid arguments: {e}")
        print(colorize(f"✗ {e}", Colors.RED), file=sys.stderr)
        return ConfigurationError.exit_code
    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        return 4


if __name__ == "__main__":
    sys.exit(main())
