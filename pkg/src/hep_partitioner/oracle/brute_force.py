"""
Exhaustive minimum-replication edge partitioning for tiny instances.
"""

import logging
from typing import Dict, List

from hep_partitioner.core.errors import ConfigurationError

from .models import MAX_TINY_EDGES, MAX_TINY_K, OptimalPartition, TinyInstance

logger = logging.getLogger(__name__)


def brute_force_optimal(inst: TinyInstance) -> OptimalPartition:
    """
    Find the minimum replication factor under a per-partition edge cap.

    Depth-first over edges with two prunings: a new partition label may only
    be the next unused one (partitions are interchangeable), and a branch is
    cut once its replica count reaches the best found.

    Raises:
        ConfigurationError: If the instance exceeds the enumeration bounds
    """
    m = len(inst.edges)
    if m > MAX_TINY_EDGES or inst.k > MAX_TINY_K:
        raise ConfigurationError(f"Instance too large for exhaustive search ({m} edges, k={inst.k})")

    active = inst.num_active_vertices
    if m == 0:
        return OptimalPartition(replication_factor=0.0, replicas=0, assignment=[])

    k = inst.k
    cap = inst.cap
    edges = inst.edges
    covered: List[Dict[int, int]] = [dict() for _ in range(k)]
    sizes = [0] * k
    labels = [0] * m
    best = {"replicas": k * active + 1, "labels": list(labels)}
    explored = 0

    def add(p: int, x: int) -> int:
        count = covered[p].get(x, 0)
        covered[p][x] = count + 1
        return 1 if count == 0 else 0

    def remove(p: int, x: int) -> None:
        count = covered[p][x] - 1
        if count:
            covered[p][x] = count
        else:
            del covered[p][x]

    def search(idx: int, used: int, replicas: int) -> None:
        nonlocal explored
        explored += 1
        if replicas >= best["replicas"]:
            return
        if idx == m:
            best["replicas"] = replicas
            best["labels"] = list(labels)
            return
        u, v = edges[idx]
        for p in range(min(used + 1, k)):
            if sizes[p] >= cap:
                continue
            gained = add(p, u) + add(p, v)
            sizes[p] += 1
            labels[idx] = p
            search(idx + 1, max(used, p + 1), replicas + gained)
            sizes[p] -= 1
            remove(p, u)
            remove(p, v)

    search(0, 0, 0)

    logger.debug(f"Exhaustive search over {m} edges explored {explored} nodes")
    return OptimalPartition(
        replication_factor=best["replicas"] / active,
        replicas=best["replicas"],
        assignment=best["labels"],
        explored_nodes=explored,
    )
