"""
Tests for environment-driven settings.
"""

import pytest
from pydantic import ValidationError

from src.settings import Settings, configure, get_settings, reset_settings


class TestSettings:
    """Test cases for Settings."""

    def test_defaults(self):
        settings = get_settings()
        assert settings.log_level == "INFO"
        assert settings.log_format == "console"
        assert settings.log_file is None
        assert settings.threads == 1
        assert settings.max_enlargements == 64

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "debug")
        monkeypatch.setenv("LOG_FORMAT", "JSON")
        monkeypatch.setenv("HOMLIE_THREADS", "4")
        reset_settings()
        settings = get_settings()
        assert settings.log_level == "DEBUG"
        assert settings.log_format == "json"
        assert settings.threads == 4

    def test_settings_are_cached(self, monkeypatch):
        first = get_settings()
        monkeypatch.setenv("HOMLIE_THREADS", "8")
        assert get_settings() is first
        reset_settings()
        assert get_settings().threads == 8

    @pytest.mark.parametrize("field, value", [("log_level", "LOUD"), ("log_format", "xml"), ("threads", 0)])
    def test_invalid_values(self, field, value):
        with pytest.raises(ValidationError):
            Settings(**{field: value})

    def test_invalid_env(self, monkeypatch):
        monkeypatch.setenv("HOMLIE_MAX_ENLARGEMENTS", "0")
        reset_settings()
        with pytest.raises(ValueError):
            get_settings()


class TestConfigure:
    """Test cases for configure."""

    def test_overrides(self):
        settings = configure(threads=3, log_level="warning")
        assert settings.threads == 3
        assert settings.log_level == "WARNING"
        assert get_settings() is settings

    def test_none_is_ignored(self):
        configure(threads=2)
        assert configure(threads=None, log_format=None).threads == 2

    def test_invalid_override(self):
        with pytest.raises(ValueError):
            configure(log_format="yaml")
