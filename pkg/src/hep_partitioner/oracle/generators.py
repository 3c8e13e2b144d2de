"""
Deterministic synthetic graphs for tests and benchmarks.

All generators return an (m, 2) int64 edge array without self-loops.
"""

import logging
from typing import Optional, Sequence

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

NAMED_SHAPES = ("path", "star", "clique", "grid")


def _edge_array(graph: nx.Graph) -> np.ndarray:
    graph.remove_edges_from(list(nx.selfloop_edges(graph)))
    edges = np.array(list(graph.edges()), dtype=np.int64)
    return edges.reshape(-1, 2)


def gen_power_law(n: int, m: int, exponent: Optional[float] = None, seed: int = 0) -> np.ndarray:
    """
    Power-law graph with about m edges on n vertices.

    Without an exponent a Barabasi-Albert graph is grown attaching
    max(1, round(m / n)) edges per new vertex. With an exponent a degree
    sequence is drawn from a power law with that exponent and wired by the
    configuration model; parallel edges and loops are dropped.
    """
    if n <= 0 or m <= 0:
        raise ValueError("n and m must be positive")

    if exponent is None:
        attach = min(max(1, round(m / n)), max(n - 1, 1))
        graph = nx.barabasi_albert_graph(n, attach, seed=seed) if n > attach else nx.complete_graph(n)
    else:
        sequence = [max(1, int(round(d))) for d in nx.utils.powerlaw_sequence(n, exponent, seed=seed)]
        if sum(sequence) % 2:
            sequence[0] += 1
        graph = nx.Graph(nx.configuration_model(sequence, seed=seed))

    edges = _edge_array(graph)
    logger.debug(f"Generated power-law graph: {n} vertices, {len(edges)} edges (seed {seed})")
    return edges


def gen_random(n: int, m: int, seed: int = 0) -> np.ndarray:
    """Uniform random graph with exactly m edges (capped at n choose 2)."""
    m = min(m, n * (n - 1) // 2)
    return _edge_array(nx.gnm_random_graph(n, m, seed=seed))


def gen_named(shape: str, size: int) -> np.ndarray:
    """
    Regular shapes: path on `size` vertices, star with `size` leaves,
    clique on `size` vertices, `size` x `size` grid.
    """
    if size <= 0:
        raise ValueError("size must be positive")
    if shape == "path":
        graph = nx.path_graph(size)
    elif shape == "star":
        graph = nx.star_graph(size)
    elif shape == "clique":
        graph = nx.complete_graph(size)
    elif shape == "grid":
        graph = nx.convert_node_labels_to_integers(nx.grid_2d_graph(size, size), ordering="sorted")
    else:
        raise ValueError(f"Unknown shape {shape!r}; expected one of {NAMED_SHAPES}")
    return _edge_array(graph)


def disjoint_union(parts: Sequence[np.ndarray]) -> np.ndarray:
    """Concatenate edge lists, shifting ids so the parts stay disconnected."""
    out = []
    offset = 0
    for edges in parts:
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        out.append(edges + offset)
        if len(edges):
            offset += int(edges.max()) + 1
    return np.concatenate(out) if out else np.empty((0, 2), dtype=np.int64)
