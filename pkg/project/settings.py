import enum
from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

from project.services.matching.shape_code import ShapePriority
from project.services.ranking import Ordering


class LogLevel(str, enum.Enum):
    """Possible log levels."""

    NOTSET = "NOTSET"
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    FATAL = "FATAL"


class Settings(BaseSettings):
    """
    Application settings.

    These parameters can be configured
    with environment variables.
    """

    host: str = "127.0.0.1"
    port: int = 8000
    # quantity of workers for uvicorn
    workers_count: int = 1
    # Enable uvicorn reloading
    reload: bool = False

    # Current environment
    environment: str = "dev"

    log_level: LogLevel = LogLevel.INFO

    # Index served by the HTTP API
    index_path: Optional[Path] = None

    # Matching defaults, all overridable from the command line
    sector_width: int = 15
    tolerance: int = 10
    dpi: int = 300
    top_k: int = 10
    ordering: Ordering = Ordering.SSD
    shape_noise_floor: int = 1
    shape_priority: ShapePriority = ShapePriority.ASCENDER
    # Smallest ink component kept before segmentation; 0 disables despeckling
    min_speck: int = 0

    # Ulam's frame cap; larger frames are max-pooled down to it
    ulam_max_height: int = 64
    ulam_max_width: int = 256

    # Worker processes for indexing and scoring
    jobs: int = 1
    seed: int = 0

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="WORDSPOT_",
        env_file_encoding="utf-8",
    )


settings = Settings()
