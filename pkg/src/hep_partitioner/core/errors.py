"""
Error types for the HEP partitioner.

Every error carries the process exit code the CLI maps it to:
0 success, 1 validation failure, 2 infeasible plan, 3 I/O or configuration
error, 4 internal invariant.
"""

from typing import Any, Optional


class HepError(Exception):
    """Base class for all partitioner errors."""

    exit_code: int = 4


class IngestionError(HepError):
    """Raised when an edge list or spill file cannot be read or written."""

    exit_code = 3

    def __init__(self, message: str, offset: Optional[int] = None):
        super().__init__(message)
        self.offset = offset


class ConfigurationError(HepError):
    """Raised for invalid run parameters or id widths that cannot hold the graph."""

    exit_code = 3


class StreamingError(HepError):
    """Raised when the streaming phase cannot read its spill input."""

    exit_code = 3


class InfeasiblePlanError(HepError):
    """Raised when no tau keeps the memory estimate within the budget."""

    exit_code = 2


class ValidationFailedError(HepError):
    """Raised when an assignment does not cover the input edges exactly once."""

    exit_code = 1

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class InvariantViolation(HepError):
    """Raised when an internal consistency check fails."""

    exit_code = 4
