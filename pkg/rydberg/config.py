"""Application configuration using Pydantic settings."""
from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path

from rydberg.schemas.quadrature import QuadratureConfig

# Repository root (parent of the package directory)
BASE_DIR = Path(__file__).resolve().parent.parent
ENV_FILE = BASE_DIR / ".env"

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseSettings):
    """Settings loaded from RYDBERG_* environment variables or the .env file."""

    model_config = SettingsConfigDict(
        env_file=str(ENV_FILE),
        env_prefix="RYDBERG_",
        case_sensitive=False,
        extra="ignore"
    )

    # Quadrature defaults
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    panel_order: int = 31
    max_depth: int = 40
    max_panels: int = 20000
    tail_growth: float = 2.0
    tail_stop: float = 1e-16

    # Exact rows beyond relaxed_from_n run at relaxed_rel_tol
    relaxed_rel_tol: float = 1e-8
    relaxed_from_n: int = 200

    # Regime dispatch
    p_equal_tolerance: float = 1e-12

    # Memo cache for the Bessel / Airy regime constants
    constant_cache_size: int = 256

    # Sweeps
    jobs: int = 1

    # Logging
    log_level: str = "INFO"

    # API
    api_title: str = "Rydberg Entropy API"
    api_version: str = "1.0.0"

    def quadrature_config(self, **overrides) -> QuadratureConfig:
        """Build the default QuadratureConfig, optionally overriding fields.

        Args:
            **overrides: QuadratureConfig fields to replace

        Returns:
            Validated quadrature configuration
        """
        values = {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "panel_order": self.panel_order,
            "max_depth": self.max_depth,
            "max_panels": self.max_panels,
            "tail_growth": self.tail_growth,
            "tail_stop": self.tail_stop,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return QuadratureConfig(**values)


# Global settings instance
settings = Settings()
