"""Configuration settings for the GBF-PUM toolkit"""
import os
from typing import Optional
from dotenv import load_dotenv

from src.utils.errors import ValidationError

# Load environment variables
load_dotenv()


def _env_float(key: str, default: float) -> float:
    value = os.getenv(key)
    return float(value) if value not in (None, "") else default


def _env_int(key: str, default: int) -> int:
    value = os.getenv(key)
    return int(value) if value not in (None, "") else default


class PipelineConfig:
    """Pipeline configuration class"""

    # Community detection
    R: float = _env_float("GBFPUM_R", 0.75)
    DMAX: int = _env_int("GBFPUM_DMAX", 6)
    DMIN: int = _env_int("GBFPUM_DMIN", 4)
    SMALL_FRACTION: float = _env_float("GBFPUM_SMALL_FRACTION", 0.02)

    # Polyharmonic-spline kernel (eps*I + L)^-s and ridge weight
    EPSILON: float = _env_float("GBFPUM_EPSILON", 1.0)
    S: float = _env_float("GBFPUM_S", 1.0)
    GAMMA: float = _env_float("GBFPUM_GAMMA", 1e-10)

    # Katz centrality
    KATZ_ALPHA: float = _env_float("GBFPUM_KATZ_ALPHA", 0.5)
    KATZ_MAX_ITER: int = _env_int("GBFPUM_KATZ_MAX_ITER", 1000)
    KATZ_TOL: float = _env_float("GBFPUM_KATZ_TOL", 1e-10)

    # Execution
    MAX_WORKERS: int = _env_int("GBFPUM_MAX_WORKERS", 4)
    DENSE_EIGEN_LIMIT: int = _env_int("GBFPUM_DENSE_EIGEN_LIMIT", 3000)

    # Logging
    LOG_LEVEL: str = os.getenv("GBFPUM_LOG_LEVEL", "INFO")
    LOG_FILE: Optional[str] = os.getenv("GBFPUM_LOG_FILE") or None
    LOG_DIR: str = os.getenv("GBFPUM_LOG_DIR", "logs")

    # Run store
    RUNS_DB_URL: str = os.getenv("GBFPUM_RUNS_DB_URL", "sqlite:///gbfpum_runs.db")

    def validate(self) -> bool:
        """Validate configuration"""
        if not 0.0 <= self.R <= 1.0:
            raise ValidationError(f"GBFPUM_R must lie in [0, 1], got {self.R}")
        if not self.DMAX >= self.DMIN >= 0:
            raise ValidationError(
                f"GBFPUM_DMAX >= GBFPUM_DMIN >= 0 required, got {self.DMAX}, {self.DMIN}"
            )
        if not 0.0 < self.SMALL_FRACTION < 1.0:
            raise ValidationError("GBFPUM_SMALL_FRACTION must lie in (0, 1)")
        if self.S <= 0:
            raise ValidationError("GBFPUM_S must be positive")
        if self.GAMMA < 0:
            raise ValidationError("GBFPUM_GAMMA must be non-negative")
        if self.MAX_WORKERS < 1:
            raise ValidationError("GBFPUM_MAX_WORKERS must be at least 1")
        return True

    @property
    def log_level(self) -> str:
        """Normalized log level name"""
        return self.LOG_LEVEL.upper()


# Global configuration instance
config = PipelineConfig()
