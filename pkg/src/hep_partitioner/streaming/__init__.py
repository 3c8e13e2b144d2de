"""
Streaming partitioning of high-to-high edges and streaming baselines.
"""

from .models import DegreeLookup, StreamingState
from .partitioner import degree_hash_assign, random_assign, stream_partition, vertex_hash
from .scoring import hdrf_score, hdrf_scores

__all__ = [
    "DegreeLookup",
    "StreamingState",
    "degree_hash_assign",
    "random_assign",
    "stream_partition",
    "vertex_hash",
    "hdrf_score",
    "hdrf_scores",
]
