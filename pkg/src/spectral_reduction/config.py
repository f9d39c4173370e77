"""Configuration management using pydantic-settings."""

from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from functools import lru_cache
from typing import Any, Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Verification settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="SPECTRAL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"

    # Membership engines
    default_degree_slack: int = 2
    max_monomials: int = 200_000
    max_rewrite_steps: int = 50_000
    max_wall_seconds: float = 600.0

    # Readings of the printed formulas
    constant_r_reading: Literal["interpreted", "literal"] = "interpreted"
    s_hat_reading: Literal["scalar", "exponent", "inverse"] = "scalar"
    qdet_shift: Literal["fused", "printed"] = "printed"

    # Sampling
    seed: int = 0
    float_tolerance: float = 1e-9

    report_dir: str = "reports"


_scoped: ContextVar[Settings | None] = ContextVar("spectral_settings", default=None)


@lru_cache
def load_settings() -> Settings:
    """Settings from the environment, read once."""
    return Settings()


def get_settings() -> Settings:
    """Settings of the current run, falling back to the environment."""
    scoped = _scoped.get()
    return scoped if scoped is not None else load_settings()


@contextmanager
def scoped_settings(**updates: Any) -> Iterator[Settings]:
    """Run a block against a copy of the settings; ``None`` values are skipped."""
    settings = get_settings().model_copy(
        update={key: value for key, value in updates.items() if value is not None}
    )
    token = _scoped.set(settings)
    try:
        yield settings
    finally:
        _scoped.reset(token)
