"""
Engine Configuration Module
Settings for the slope engine, read from SLOPE_* environment variables or a .env file.
"""

import logging
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)

GridName = Literal["small", "default", "large"]


class EngineSettings(BaseSettings):
    """Runtime settings; command-line flags override these values"""

    model_config = SettingsConfigDict(
        env_prefix="SLOPE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    log_file: Optional[str] = None
    default_grid: GridName = "default"
    jobs: int = Field(1, ge=1, le=256)
    float_digits: int = Field(12, ge=1, le=30)
    output_version: str = "1.0.0"

    @field_validator("log_level")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value!r}")
        return level


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    """Load settings once per process"""
    settings = EngineSettings()
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
