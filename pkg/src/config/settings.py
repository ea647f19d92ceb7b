from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from ABD_* environment variables."""

    # Application
    app_name: str = "alpha-Baskakov-Durrmeyer toolkit"
    debug: bool = False

    # Parallelism (0 = one worker per CPU)
    threads: int = 0

    # Numerical defaults for EvalOptions / Interval
    series_eps: float = 1e-10
    quad_rel_tol: float = 1e-10
    k_max: int = 10000
    modulus_resolution: int = 4001

    # Per-run log files
    log_dir: Optional[Path] = None

    model_config = SettingsConfigDict(
        env_prefix="ABD_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache
def get_settings() -> Settings:
    """Cached settings instance."""
    return Settings()


settings = get_settings()
