"""
Edge assignment records: in-memory and file sinks, and the assignment file reader.
"""

from .models import EdgeAssignment
from .store import (
    AssignmentSink,
    FileAssignmentSink,
    MemoryAssignmentSink,
    read_assignment,
    record_dtype,
)

__all__ = [
    "EdgeAssignment",
    "AssignmentSink",
    "FileAssignmentSink",
    "MemoryAssignmentSink",
    "read_assignment",
    "record_dtype",
]
