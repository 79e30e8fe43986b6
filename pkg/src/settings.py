"""
Environment-driven configuration.
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

load_dotenv()


class Settings(BaseModel):
    """Runtime settings, read from the environment (and ``.env``)."""

    log_level: str = "INFO"
    log_format: str = "console"
    log_file: Optional[str] = None
    threads: int = Field(default=1, ge=1)
    max_enlargements: int = Field(default=64, ge=1)

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ValueError(f'Invalid log level: {v}')
        return level

    @field_validator('log_format')
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        fmt = v.strip().lower()
        if fmt not in ('json', 'console'):
            raise ValueError(f"Invalid log format: {v} - expected 'json' or 'console'")
        return fmt

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from environment variables."""
        return cls(
            log_level=os.getenv('LOG_LEVEL', 'INFO'),
            log_format=os.getenv('LOG_FORMAT', 'console'),
            log_file=os.getenv('LOG_FILE') or None,
            threads=int(os.getenv('HOMLIE_THREADS', '1')),
            max_enlargements=int(os.getenv('HOMLIE_MAX_ENLARGEMENTS', '64')),
        )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def configure(**overrides: object) -> Settings:
    """Override individual settings (used by CLI flags and tests)."""
    global _settings
    current = get_settings()
    values = {key: value for key, value in overrides.items() if value is not None}
    _settings = current.model_copy(update=values)
    _settings = Settings.model_validate(_settings.model_dump())
    return _settings


def reset_settings() -> None:
    """Forget cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None
