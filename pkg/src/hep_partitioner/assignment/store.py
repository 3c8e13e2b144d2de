"""
Assignment sinks and the binary assignment file format.

File layout: a 20-byte header (magic "HEPA", format version, id width,
reserved byte, k, record count) followed by fixed-width records of
(u, v, partition id). Ids use the configured width; partition ids are uint32.
"""

import logging
import struct
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from hep_partitioner.core.errors import IngestionError

from .models import EdgeAssignment

logger = logging.getLogger(__name__)

MAGIC = b"HEPA"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sHBBIQ")


def record_dtype(id_bytes: int) -> np.dtype:
    """Structured dtype of one assignment record."""
    ids = "<u4" if id_bytes == 4 else "<u8"
    return np.dtype([("u", ids), ("v", ids), ("p", "<u4")])


class AssignmentSink:
    """
    Append-only consumer of (u, v, partition) records.

    Keeps a running count per partition; records are never retracted.
    """

    def __init__(self, k: int):
        self.k = k
        self.counts: List[int] = [0] * k

    def append(self, u: int, v: int, partition: int) -> None:
        self.counts[partition] += 1
        self._write_one(u, v, partition)

    def extend(self, us: np.ndarray, vs: np.ndarray, partitions: np.ndarray) -> None:
        if len(us) == 0:
            return
        for p, c in enumerate(np.bincount(partitions, minlength=self.k).tolist()):
            self.counts[p] += c
        self._write_many(us, vs, partitions)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def close(self) -> None:
        """Flush buffered records."""

    def discard(self) -> None:
        """Drop a partial result after a failed run."""
        self.counts = [0] * self.k

    def _write_one(self, u: int, v: int, partition: int) -> None:
        raise NotImplementedError

    def _write_many(self, us: np.ndarray, vs: np.ndarray, partitions: np.ndarray) -> None:
        raise NotImplementedError

    def __enter__(self) -> "AssignmentSink":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.close()


class MemoryAssignmentSink(AssignmentSink):
    """Keeps all records in memory, in emission order."""

    def __init__(self, k: int):
        super().__init__(k)
        self._records: List[Tuple[int, int, int]] = []

    def _write_one(self, u: int, v: int, partition: int) -> None:
        self._records.append((u, v, partition))

    def _write_many(self, us: np.ndarray, vs: np.ndarray, partitions: np.ndarray) -> None:
        self._records.extend(zip(us.tolist(), vs.tolist(), partitions.tolist()))

    @property
    def records(self) -> List[Tuple[int, int, int]]:
        return self._records

    def discard(self) -> None:
        super().discard()
        self._records = []

    def to_assignment(self) -> EdgeAssignment:
        return EdgeAssignment.from_records(self._records, self.k)


class FileAssignmentSink(AssignmentSink):
    """
    Streams records to an assignment file.

    The header's record count is written as zero and patched on close.
    """

    def __init__(
        self,
        path: Union[str, Path],
        k: int,
        id_bytes: int = 4,
        buffer_records: int = 1 << 16,
    ):
        """
        Create the assignment file.

        Args:
            path: Destination file
            k: Number of partitions
            id_bytes: Vertex id width of the records
            buffer_records: Records buffered before a write
        """
        super().__init__(k)
        self.path = Path(path)
        self.id_bytes = id_bytes
        self.dtype = record_dtype(id_bytes)
        self.buffer_records = buffer_records
        self._buffer: List[Tuple[int, int, int]] = []
        self._written = 0

        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._file = self.path.open("wb")
            self._file.write(HEADER.pack(MAGIC, FORMAT_VERSION, id_bytes, 0, k, 0))
        except OSError as e:
            raise IngestionError(f"Cannot create assignment file {self.path}: {e}") from e

    def _write_one(self, u: int, v: int, partition: int) -> None:
        self._buffer.append((u, v, partition))
        if len(self._buffer) >= self.buffer_records:
            self._flush()

    def _write_many(self, us: np.ndarray, vs: np.ndarray, partitions: np.ndarray) -> None:
        self._flush()
        block = np.empty(len(us), dtype=self.dtype)
        block["u"] = us
        block["v"] = vs
        block["p"] = partitions
        self._dump(block)

    def _flush(self) -> None:
        if not self._buffer:
            return
        block = np.array(self._buffer, dtype=self.dtype)
        self._buffer = []
        self._dump(block)

    def _dump(self, block: np.ndarray) -> None:
        try:
            block.tofile(self._file)
        except OSError as e:
            raise IngestionError(f"Failed writing assignment file {self.path}: {e}") from e
        self._written += len(block)

    def close(self) -> None:
        if self._file.closed:
            return
        self._flush()
        try:
            self._file.seek(0)
            self._file.write(
                HEADER.pack(MAGIC, FORMAT_VERSION, self.id_bytes, 0, self.k, self._written)
            )
        finally:
            self._file.close()
        logger.info(f"Wrote {self._written} assignment records to {self.path}")

    def discard(self) -> None:
        """Close without patching the header and remove the partial file."""
        dropped = self._written + len(self._buffer)
        super().discard()
        self._buffer = []
        self._written = 0
        if not self._file.closed:
            self._file.close()
        self.path.unlink(missing_ok=True)
        logger.warning(f"Discarded partial assignment file {self.path} ({dropped} records)")


def read_assignment(path: Union[str, Path], expected_k: Optional[int] = None) -> EdgeAssignment:
    """
    Load an assignment file.

    Args:
        path: Assignment file written by FileAssignmentSink
        expected_k: If given, the header's k must match

    Returns:
        EdgeAssignment with int64 arrays

    Raises:
        IngestionError: On missing file, bad magic, unsupported version or truncation
    """
    path = Path(path)
    try:
        with path.open("rb") as f:
            raw = f.read(HEADER.size)
            if len(raw) < HEADER.size:
                raise IngestionError(f"Assignment file {path} is shorter than its header", offset=0)
            magic, version, id_bytes, _, k, count = HEADER.unpack(raw)
            if magic != MAGIC:
                raise IngestionError(f"{path} is not an assignment file (bad magic)", offset=0)
            if version != FORMAT_VERSION:
                raise IngestionError(f"Unsupported assignment format version {version}")
            dtype = record_dtype(id_bytes)
            records = np.fromfile(f, dtype=dtype, count=count)
    except OSError as e:
        raise IngestionError(f"Cannot read assignment file {path}: {e}") from e

    if len(records) != count:
        offset = HEADER.size + len(records) * dtype.itemsize
        raise IngestionError(
            f"Assignment file {path} truncated at byte offset {offset} "
            f"({len(records)} of {count} records)",
            offset=offset,
        )
    if expected_k is not None and k != expected_k:
        raise IngestionError(f"Assignment file {path} has k={k}, expected {expected_k}")

    return EdgeAssignment(
        u=records["u"].astype(np.int64),
        v=records["v"].astype(np.int64),
        partition=records["p"].astype(np.int64),
        k=k,
    )
