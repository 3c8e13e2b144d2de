"""
End-to-end partitioning pipeline and its run configuration.
"""

from .models import PipelineMode, RunConfig, RunResult, parse_byte_size
from .service import HepPipeline, run_partition

__all__ = [
    "PipelineMode",
    "RunConfig",
    "RunResult",
    "parse_byte_size",
    "HepPipeline",
    "run_partition",
]
