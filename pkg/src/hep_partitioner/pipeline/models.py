"""
Run configuration for one partitioning pipeline invocation.
"""

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from hep_partitioner.assignment.models import EdgeAssignment
from hep_partitioner.core.config import RemovalStrategy
from hep_partitioner.core.errors import ConfigurationError
from hep_partitioner.graph.models import TauPlan
from hep_partitioner.metrics.models import PartitionReport

logger = logging.getLogger(__name__)

_BYTE_UNITS = {
    "": 1,
    "b": 1,
    "k": 10**3,
    "kb": 10**3,
    "kib": 2**10,
    "m": 10**6,
    "mb": 10**6,
    "mib": 2**20,
    "g": 10**9,
    "gb": 10**9,
    "gib": 2**30,
    "t": 10**12,
    "tb": 10**12,
    "tib": 2**40,
}
_BYTE_PATTERN = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([a-zA-Z]*)\s*$")


def parse_byte_size(value: Union[str, int, float]) -> int:
    """
    Parse a byte count such as "280B", "64KiB", "2G" or "1.5GiB".

    Decimal suffixes (K, M, G, T, optionally with B) are powers of 1000;
    binary suffixes (KiB, MiB, ...) are powers of 1024.
    """
    if isinstance(value, (int, float)):
        return int(value)
    match = _BYTE_PATTERN.match(value)
    if not match:
        raise ValueError(f"Cannot parse byte size {value!r}")
    number, unit = match.groups()
    unit = unit.lower()
    if unit not in _BYTE_UNITS:
        raise ValueError(f"Unknown byte unit {unit!r} in {value!r}")
    return int(float(number) * _BYTE_UNITS[unit])


class PipelineMode(str, Enum):
    """Which partitioner the pipeline runs."""

    HEP = "hep"
    REFERENCE_NE = "reference-ne"
    SIMPLE_HYBRID = "simple-hybrid"
    RANDOM = "random"
    DEGREE_HASH = "degree-hash"


class RunConfig(BaseModel):
    """
    Parameters of one pipeline run.

    Unset optional fields fall back to the process settings
    (HEP_INGEST_* / HEP_PARTITION_* environment variables).
    """

    input: Path = Field(..., description="Binary edge list")
    k: int = Field(..., ge=1, description="Number of partitions")
    tau: Union[float, str] = Field(
        default=math.inf,
        description="Degree threshold factor (> 0, 'inf', or 'auto' with memory_budget)",
    )
    memory_budget: Optional[int] = Field(default=None, description="Byte budget for tau planning")
    alpha: Optional[float] = Field(default=None, description="Balance slack for streaming")
    id_bytes: Optional[int] = Field(default=None, description="Vertex id width (4 or 8)")
    output: Optional[Path] = Field(default=None, description="Assignment file")
    spill: Optional[Path] = Field(default=None, description="High-to-high spill file")
    stats: Optional[Path] = Field(default=None, description="Stats document (JSON)")
    mode: PipelineMode = PipelineMode.HEP
    debug: Optional[bool] = None
    removal_strategy: Optional[RemovalStrategy] = None
    keep_spill: Optional[bool] = None
    seed: int = Field(default=0, description="Seed for the random baselines")
    validate_output: bool = Field(default=False, description="Validate the assignment after the run")

    @field_validator("tau", mode="before")
    @classmethod
    def validate_tau(cls, v: Any) -> Union[float, str]:
        """Accept a positive number, 'inf' or 'auto'."""
        if isinstance(v, str):
            text = v.strip().lower()
            if text == "auto":
                return "auto"
            if text in ("inf", "infinity", "+inf"):
                return math.inf
            try:
                v = float(text)
            except ValueError as e:
                raise ValueError(f"tau must be a number, 'inf' or 'auto', got {v!r}") from e
        v = float(v)
        if not v > 0:
            raise ValueError("tau must be > 0")
        return v

    @field_validator("memory_budget", mode="before")
    @classmethod
    def validate_budget(cls, v: Any) -> Optional[int]:
        if v is None:
            return None
        budget = parse_byte_size(v)
        if budget <= 0:
            raise ValueError("memory_budget must be positive")
        return budget

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v < 1.0:
            raise ValueError("alpha must be >= 1")
        return v

    @field_validator("id_bytes")
    @classmethod
    def validate_id_bytes(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v not in (4, 8):
            raise ValueError("id_bytes must be 4 or 8")
        return v

    @model_validator(mode="after")
    def validate_auto_tau(self) -> "RunConfig":
        if self.tau == "auto" and self.memory_budget is None:
            raise ValueError("tau 'auto' requires memory_budget")
        return self

    @property
    def auto_tau(self) -> bool:
        return self.tau == "auto"

    @classmethod
    def from_yaml(cls, path: Union[str, Path], **overrides: Any) -> "RunConfig":
        """
        Load a RunConfig from a YAML mapping; non-None overrides win.

        Example YAML:
            input: graphs/orkut.bin
            k: 32
            tau: auto
            memory_budget: 2GiB
            output: out/orkut.hepa
        """
        try:
            with open(path, "r") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(f"Cannot load run config {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"Run config {path} must be a mapping")
        data.update({key: value for key, value in overrides.items() if value is not None})
        logger.debug(f"Loaded run config from {path}")
        return cls(**data)


@dataclass
class RunResult:
    """Artifacts of one pipeline run."""

    report: PartitionReport
    assignment: EdgeAssignment
    output: Optional[Path] = None
    spill_path: Optional[Path] = None
    plan: Optional[TauPlan] = None
