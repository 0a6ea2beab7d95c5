"""Runtime settings using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables.

    Everything that changes *results* lives in the experiment config; these
    settings only steer where artifacts go and how the process runs.
    """

    model_config = SettingsConfigDict(
        env_prefix="FEDSDWC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Output
    out: Path = Path("runs")

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    log_format: Literal["console", "json"] = "console"

    # Execution
    num_threads: int = Field(default=1, ge=1)
    executor: Literal["sequential", "threads"] = "sequential"
    max_workers: int = Field(default=4, ge=1)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
