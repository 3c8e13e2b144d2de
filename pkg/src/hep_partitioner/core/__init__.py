"""
Core module for the HEP partitioner.

Contains configuration, error types and logging setup shared by all modules.
"""

from hep_partitioner.core.config import (
    AppSettings,
    IngestSettings,
    PartitionSettings,
    RemovalStrategy,
    get_settings,
    reload_settings,
)
from hep_partitioner.core.errors import (
    ConfigurationError,
    HepError,
    InfeasiblePlanError,
    IngestionError,
    InvariantViolation,
    StreamingError,
    ValidationFailedError,
)
from hep_partitioner.core.logging_setup import setup_logging

__all__ = [
    "AppSettings",
    "IngestSettings",
    "PartitionSettings",
    "RemovalStrategy",
    "get_settings",
    "reload_settings",
    "ConfigurationError",
    "HepError",
    "InfeasiblePlanError",
    "IngestionError",
    "InvariantViolation",
    "StreamingError",
    "ValidationFailedError",
    "setup_logging",
]
