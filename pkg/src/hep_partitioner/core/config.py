"""
Configuration management for the HEP partitioner.

Uses Pydantic Settings for environment variable validation and type safety.
Per-run parameters (input, k, tau, ...) live in the pipeline RunConfig model;
the settings here are process-wide defaults.
"""

from enum import Enum
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class RemovalStrategy(str, Enum):
    """How clean-up removes entries from an adjacency sublist."""

    STABLE = "stable"  # order-preserving compaction
    SWAP = "swap"  # swap with the last valid entry


class IngestSettings(BaseSettings):
    """Edge-list ingestion configuration."""

    model_config = SettingsConfigDict(env_prefix="HEP_INGEST_")

    id_bytes: int = Field(
        default=4,
        description="Width of a vertex id in the binary edge list (4 or 8 bytes)"
    )
    chunk_edges: int = Field(
        default=1 << 20,
        ge=1,
        description="Number of edges read per chunk during the two ingestion passes"
    )
    spill_dir: Optional[str] = Field(
        default=None,
        description="Directory for the high-to-high spill file (default: next to the output)"
    )
    keep_spill: bool = Field(
        default=False,
        description="Keep the spill file after a successful run"
    )

    @field_validator("id_bytes")
    @classmethod
    def validate_id_bytes(cls, v: int) -> int:
        """Only 32-bit and 64-bit ids are supported."""
        if v not in (4, 8):
            raise ValueError("id_bytes must be 4 or 8")
        return v


class PartitionSettings(BaseSettings):
    """Partitioning defaults."""

    model_config = SettingsConfigDict(env_prefix="HEP_PARTITION_")

    alpha: float = Field(
        default=1.05,
        ge=1.0,
        description="Balance slack for streaming: partitions stop accepting at alpha*|E|/k"
    )
    hdrf_lambda: float = Field(
        default=1.1,
        ge=0.0,
        description="Weight of the HDRF balance term"
    )
    hdrf_epsilon: float = Field(
        default=1.0,
        gt=0.0,
        description="Constant in the HDRF balance denominator"
    )
    removal_strategy: RemovalStrategy = Field(
        default=RemovalStrategy.STABLE,
        description="Clean-up removal strategy (stable or swap)"
    )
    debug: bool = Field(
        default=False,
        description="Enable access logging, d_ext recounts and clean-up checks"
    )


class AppSettings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_prefix="HEP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )
    log_format: str = Field(
        default="text",
        description="Log line format (text or json)"
    )

    # Nested settings
    ingest: IngestSettings = Field(default_factory=IngestSettings)
    partition: PartitionSettings = Field(default_factory=PartitionSettings)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v = v.upper()
        if v not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return v

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Validate log format."""
        v = v.lower()
        if v not in ("text", "json"):
            raise ValueError("Log format must be 'text' or 'json'")
        return v


# Global settings instance
_settings: Optional[AppSettings] = None


def get_settings() -> AppSettings:
    """
    Get the global settings instance.

    Lazily loads settings on first access.

    Returns:
        AppSettings: The global settings instance
    """
    global _settings
    if _settings is None:
        _settings = AppSettings(
            ingest=IngestSettings(),
            partition=PartitionSettings(),
        )
    return _settings


def reload_settings() -> AppSettings:
    """
    Reload settings from environment variables.

    Useful for testing or when the environment changes.

    Returns:
        AppSettings: The reloaded settings instance
    """
    global _settings
    _settings = None
    return get_settings()
