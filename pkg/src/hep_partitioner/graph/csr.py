"""
Second ingestion pass: build the pruned CSR and write the high-to-high spill file.
"""

import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from hep_partitioner.core.errors import ConfigurationError, IngestionError

from .edge_io import EdgeSource
from .models import DegreeStats, H2HSpill, HighDegreeSet, PrunedCSR, id_dtype

logger = logging.getLogger(__name__)


def _scatter(owners: np.ndarray, neighbors: np.ndarray, cursor: np.ndarray, column: np.ndarray) -> None:
    """
    Append neighbors to their owners' sublists, preserving input order per owner.

    cursor[v] is the next free slot of v's sublist and is advanced in place.
    """
    if len(owners) == 0:
        return
    order = np.argsort(owners, kind="stable")
    sorted_owners = owners[order]
    n = len(sorted_owners)

    boundaries = np.flatnonzero(sorted_owners[1:] != sorted_owners[:-1]) + 1
    group_starts = np.concatenate(([0], boundaries))
    group_lengths = np.diff(np.concatenate((group_starts, [n])))
    rank = np.arange(n) - np.repeat(group_starts, group_lengths)

    column[cursor[sorted_owners] + rank] = neighbors[order]
    np.add.at(cursor, sorted_owners[group_starts], group_lengths)


def build_pruned_csr(
    edge_source: EdgeSource,
    stats: DegreeStats,
    highs: HighDegreeSet,
    spill_path: Union[str, Path],
    id_bytes: int = 4,
    chunk_edges: Optional[int] = None,
) -> Tuple[PrunedCSR, H2HSpill]:
    """
    Build the pruned CSR from a second pass over the edge list.

    For each input edge (u, v): if both endpoints are high-degree the edge is
    written to the spill file; otherwise v is appended to u's out-sublist when
    u is low-degree and u is appended to v's in-sublist when v is low-degree.
    Self-loops are skipped.

    Args:
        edge_source: Sequential edge reader (same input as the degree pass)
        stats: Degree statistics from the first pass
        highs: High-degree classification
        spill_path: Destination of the high-to-high edge file
        id_bytes: Vertex id width used for the arrays and the spill records
        chunk_edges: Edges per chunk

    Returns:
        (PrunedCSR, H2HSpill)
    """
    dtype = id_dtype(id_bytes)
    n = stats.num_vertices
    high = highs.membership
    low = ~high

    region = np.where(low, stats.degrees, 0)
    total_entries = int(region.sum())
    if total_entries > np.iinfo(dtype).max or n > np.iinfo(dtype).max:
        raise ConfigurationError(
            f"Column offsets ({total_entries} entries, {n} ids) overflow {id_bytes}-byte ids; "
            f"use --id-bytes 8"
        )

    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(region, out=offsets[1:])
    in_offsets = offsets[:-1] + np.where(low, stats.out_degrees, 0)

    column = np.empty(total_entries, dtype=dtype)
    out_cursor = offsets[:-1].copy()
    in_cursor = in_offsets.copy()

    spill_path = Path(spill_path)
    spilled = 0
    try:
        spill_path.parent.mkdir(parents=True, exist_ok=True)
        with spill_path.open("wb") as spill:
            for chunk in edge_source.iter_chunks(chunk_edges):
                if len(chunk) == 0:
                    continue
                u = chunk[:, 0].astype(np.int64)
                v = chunk[:, 1].astype(np.int64)
                keep = u != v
                u = u[keep]
                v = v[keep]

                hu = high[u]
                hv = high[v]
                both = hu & hv
                if both.any():
                    np.stack([u[both], v[both]], axis=1).astype(dtype).tofile(spill)
                    spilled += int(both.sum())

                _scatter(u[~hu], v[~hu], out_cursor, column)
                _scatter(v[~hv], u[~hv], in_cursor, column)
    except OSError as e:
        raise IngestionError(f"Failed writing spill file {spill_path}: {e}") from e

    out_size = np.where(low, stats.out_degrees, 0).astype(dtype)
    in_size = np.where(low, stats.degrees - stats.out_degrees, 0).astype(dtype)

    csr = PrunedCSR(
        index_out=offsets.astype(dtype),
        index_in=in_offsets.astype(dtype),
        column=column,
        out_size=out_size,
        in_size=in_size,
        num_inmem_edges=stats.num_edges - spilled,
    )
    spill = H2HSpill(path=spill_path, count=spilled, id_bytes=id_bytes)

    logger.info(
        f"Built pruned CSR: {total_entries} column entries "
        f"(unpruned {2 * stats.num_edges}), {csr.num_inmem_edges} in-memory edges, "
        f"{spilled} spilled to {spill_path}"
    )
    return csr, spill
