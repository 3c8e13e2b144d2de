"""
Binary edge-list reading and writing.

The on-disk format is a headerless sequence of records, each holding two
unsigned little-endian vertex ids of 4 or 8 bytes. The same format is used for
input graphs, the high-to-high spill file and generated corpora.
"""

import logging
from pathlib import Path
from typing import Iterator, Optional, Protocol, Union

import numpy as np

from hep_partitioner.core.errors import ConfigurationError, IngestionError

from .models import id_dtype

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_EDGES = 1 << 20


class EdgeSource(Protocol):
    """Anything that can be read sequentially as chunks of (u, v) rows."""

    def iter_chunks(self, chunk_edges: Optional[int] = None) -> Iterator[np.ndarray]:
        ...


class BinaryEdgeFile:
    """
    Sequential chunked reader for a binary edge list.

    Attributes:
        path: Path to the edge list
        id_bytes: Width of one vertex id
        num_records: Number of complete (u, v) records in the file
    """

    def __init__(self, path: Union[str, Path], id_bytes: int = 4):
        """
        Open and validate an edge list.

        Args:
            path: Path to the binary edge list
            id_bytes: Vertex id width (4 or 8)

        Raises:
            IngestionError: If the file is missing or its length is not a whole
                number of records
        """
        self.path = Path(path)
        self.id_bytes = id_bytes
        self.dtype = id_dtype(id_bytes)
        record = 2 * id_bytes

        try:
            size = self.path.stat().st_size
        except OSError as e:
            raise IngestionError(f"Cannot read edge list {self.path}: {e}") from e

        if size % record != 0:
            offset = size - size % record
            raise IngestionError(
                f"Truncated record in {self.path} at byte offset {offset} "
                f"(file length {size} is not a multiple of {record})",
                offset=offset,
            )
        self.num_records = size // record

    def iter_chunks(self, chunk_edges: Optional[int] = None) -> Iterator[np.ndarray]:
        """
        Yield (n, 2) arrays of vertex ids in file order.

        Args:
            chunk_edges: Maximum number of edges per chunk
        """
        chunk_edges = chunk_edges or DEFAULT_CHUNK_EDGES
        try:
            with self.path.open("rb") as f:
                while True:
                    flat = np.fromfile(f, dtype=self.dtype, count=2 * chunk_edges)
                    if flat.size == 0:
                        break
                    yield flat.reshape(-1, 2)
        except OSError as e:
            raise IngestionError(f"Failed reading edge list {self.path}: {e}") from e

    def read_all(self) -> np.ndarray:
        """Read the whole file as one (m, 2) array."""
        chunks = list(self.iter_chunks())
        if not chunks:
            return np.empty((0, 2), dtype=self.dtype)
        return np.concatenate(chunks)


class ArrayEdgeSource:
    """In-memory edge source over an (m, 2) array or a list of pairs."""

    def __init__(self, edges, chunk_edges: int = DEFAULT_CHUNK_EDGES):
        arr = np.asarray(edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ConfigurationError(f"Edge array must have shape (m, 2), got {arr.shape}")
        if (arr < 0).any():
            raise ConfigurationError("Vertex ids must be non-negative")
        self.edges = arr
        self.chunk_edges = chunk_edges
        self.num_records = len(arr)

    def iter_chunks(self, chunk_edges: Optional[int] = None) -> Iterator[np.ndarray]:
        step = chunk_edges or self.chunk_edges
        for start in range(0, len(self.edges), step):
            yield self.edges[start:start + step]

    def read_all(self) -> np.ndarray:
        return self.edges


def write_edge_list(path: Union[str, Path], edges, id_bytes: int = 4) -> int:
    """
    Write edges in the binary edge-list format.

    Args:
        path: Destination file
        edges: (m, 2) array-like of vertex ids
        id_bytes: Vertex id width

    Returns:
        Number of records written
    """
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    dtype = id_dtype(id_bytes)
    if arr.size and (arr.min() < 0 or arr.max() > np.iinfo(dtype).max):
        raise ConfigurationError(
            f"Vertex ids do not fit in {id_bytes} bytes; use --id-bytes 8"
        )
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        arr.astype(dtype).tofile(path)
    except OSError as e:
        raise IngestionError(f"Failed writing edge list {path}: {e}") from e

    logger.info(f"Wrote {len(arr)} edges to {path}")
    return len(arr)


def convert_text_edge_list(
    src: Union[str, Path], dst: Union[str, Path], id_bytes: int = 4
) -> int:
    """
    Convert a whitespace-separated text edge list into the binary format.

    Lines starting with '#' or '%' are treated as comments; columns beyond the
    first two (weights, timestamps) are ignored.

    Returns:
        Number of records written
    """
    try:
        edges = np.loadtxt(
            src, dtype=np.int64, comments=("#", "%"), usecols=(0, 1), ndmin=2
        )
    except (OSError, ValueError) as e:
        raise IngestionError(f"Cannot parse text edge list {src}: {e}") from e

    logger.info(f"Parsed {len(edges)} edges from {src}")
    return write_edge_list(dst, edges, id_bytes=id_bytes)
