"""
Memory-footprint estimation and tau planning against a memory budget.
"""

import logging
import math
import time
from typing import List

from .degrees import high_degree_mask
from .models import DegreeStats, FootprintRow, MemoryEstimate, TauPlan, tau_from_cutoff

logger = logging.getLogger(__name__)


def estimate_memory_breakdown(
    num_vertices: int, low_volume: int, k: int, id_bytes: int
) -> MemoryEstimate:
    """
    Per-structure footprint of NE++.

    Args:
        num_vertices: Id-space size |V|
        low_volume: Sum of degrees of low-degree vertices (column entries)
        k: Number of partitions
        id_bytes: Vertex id width

    Returns:
        MemoryEstimate with the five structure terms
    """
    return MemoryEstimate(
        index_arrays=2 * num_vertices * id_bytes,
        column=low_volume * id_bytes,
        size_fields=2 * num_vertices * id_bytes,
        bitsets=math.ceil(num_vertices * (k + 1) / 8),
        heap=2 * num_vertices * id_bytes,
    )


def low_degree_volume(stats: DegreeStats, tau: float) -> int:
    """Number of column entries kept at threshold factor tau."""
    if math.isinf(tau):
        return 2 * stats.num_edges
    return int(stats.degrees[~high_degree_mask(stats, tau)].sum())


def estimate_memory(stats: DegreeStats, tau: float, k: int, id_bytes: int) -> int:
    """
    Total estimated bytes: sum_{v in V_l} d(v)*b + 6*|V|*b + |V|*(k+1)/8.

    Args:
        stats: Degree statistics
        tau: Threshold factor
        k: Number of partitions (>= 1)
        id_bytes: Vertex id width (4 or 8)

    Returns:
        Estimated bytes (bitset term rounded up)
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if id_bytes not in (4, 8):
        raise ValueError("id_bytes must be 4 or 8")
    return estimate_memory_breakdown(
        stats.num_vertices, low_degree_volume(stats, tau), k, id_bytes
    ).total


def plan_tau(stats: DegreeStats, budget: int, k: int, id_bytes: int) -> TauPlan:
    """
    Choose the largest tau whose memory estimate fits the budget.

    Candidate splits are "degree <= c is low" for c = 0 and every distinct
    degree c; any tau between two adjacent distinct degrees yields the same
    split, so the scan over cutoffs is exact. The returned tau lies strictly
    inside the chosen split's tau interval; it is +inf when no pruning is
    needed.

    Args:
        stats: Degree statistics
        budget: Memory budget in bytes (> 0)
        k: Number of partitions
        id_bytes: Vertex id width

    Returns:
        TauPlan; feasible is False when the |V|-proportional cost alone exceeds
        the budget
    """
    if budget <= 0:
        raise ValueError("budget must be positive")

    started = time.perf_counter()
    mean = stats.mean_degree
    fixed = estimate_memory_breakdown(stats.num_vertices, 0, k, id_bytes).total

    cutoffs: List[int] = [0] + [int(c) for c in stats.cutoffs]
    rows: List[FootprintRow] = []
    chosen = None
    for idx, cutoff in enumerate(cutoffs):
        next_cutoff = cutoffs[idx + 1] if idx + 1 < len(cutoffs) else None
        volume = stats.volume_at_most(cutoff)
        estimate = fixed + volume * id_bytes
        feasible = estimate <= budget
        rows.append(
            FootprintRow(
                cutoff=cutoff,
                tau_low=cutoff / mean if mean > 0 else 0.0,
                tau_high=next_cutoff / mean if (next_cutoff is not None and mean > 0) else math.inf,
                column_entries=volume,
                estimate_bytes=estimate,
                feasible=feasible,
            )
        )
        if feasible:
            chosen = idx

    plan = TauPlan(
        feasible=chosen is not None,
        budget_bytes=budget,
        k=k,
        id_bytes=id_bytes,
        fixed_bytes=fixed,
        footprint=rows,
    )

    if chosen is not None:
        row = rows[chosen]
        next_cutoff = cutoffs[chosen + 1] if chosen + 1 < len(cutoffs) else None
        plan.tau = tau_from_cutoff(row.cutoff, next_cutoff, mean)
        plan.tau_range = (row.tau_low, row.tau_high)
        plan.cutoff = row.cutoff
        plan.estimate_bytes = row.estimate_bytes
        logger.info(
            f"Planned tau={plan.tau:.4f} (cutoff degree {row.cutoff}, "
            f"estimate {row.estimate_bytes} B <= budget {budget} B)"
        )
    else:
        logger.warning(
            f"No feasible tau: fixed cost {fixed} B exceeds budget {budget} B"
        )

    plan.planning_seconds = time.perf_counter() - started
    return plan
