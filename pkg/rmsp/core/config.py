"""Runtime configuration loaded from environment variables."""

from __future__ import annotations

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Typed runtime settings loaded from environment."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    APP_NAME: str = Field(default="rm-sp-decoder", description="Human-friendly tool name.")
    APP_VERSION: str = Field(default="0.1.0", description="Tool version string.")
    LOG_LEVEL: str = Field(default="INFO", description="Python logging level (e.g., INFO, DEBUG).")

    # Monte-Carlo defaults (CLI flags override these)
    DEFAULT_SEED: int = Field(default=2021, ge=0, description="Master seed for simulations.")
    WORKERS: int = Field(default=1, ge=1, le=512, description="Frame-parallel worker processes.")
    MAX_FRAMES: int = Field(default=100_000, ge=1, description="Frame cap per Eb/N0 point.")
    TARGET_ERRORS: int = Field(
        default=100,
        ge=1,
        description="Frame errors after which an Eb/N0 point stops early.",
    )
    BATCH_FRAMES: int = Field(
        default=256,
        ge=1,
        description="Frames decoded per scheduling batch before the stop rule is checked.",
    )

    # Cost model
    QUANT_BITS: int = Field(
        default=32,
        ge=1,
        le=64,
        description="Bits per stored real value (Q) used by the memory model only.",
    )


_SETTINGS: Optional[Settings] = None


# PUBLIC_INTERFACE
def get_settings() -> Settings:
    """Return a cached Settings instance (simple singleton for process lifetime)."""
    global _SETTINGS  # noqa: PLW0603
    if _SETTINGS is None:
        _SETTINGS = Settings()  # type: ignore[call-arg]
    return _SETTINGS


def reset_settings_cache() -> None:
    """Drop the cached Settings so the next get_settings() re-reads the environment."""
    global _SETTINGS  # noqa: PLW0603
    _SETTINGS = None
