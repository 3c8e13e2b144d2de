"""
NE++: in-memory neighborhood expansion over the pruned CSR.
"""

from .engine import ExpansionEngine, partition_in_memory
from .heap import ExternalDegreeHeap
from .models import ExpansionDiagnostics, PartitionState

__all__ = [
    "ExpansionEngine",
    "partition_in_memory",
    "ExternalDegreeHeap",
    "ExpansionDiagnostics",
    "PartitionState",
]
