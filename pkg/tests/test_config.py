"""Tests for configuration module."""

import os
from unittest.mock import patch

from spectral_reduction.config import Settings, get_settings, load_settings, scoped_settings


class TestSettings:
    """Tests for Settings class."""

    def test_settings_from_env(self):
        """Test loading budgets and readings from environment."""
        with patch.dict(
            os.environ,
            {
                "SPECTRAL_MAX_MONOMIALS": "1234",
                "SPECTRAL_QDET_SHIFT": "printed",
            },
        ):
            load_settings.cache_clear()
            settings = Settings()
            assert settings.max_monomials == 1234
            assert settings.qdet_shift == "printed"

    def test_default_values(self):
        """Test default setting values."""
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings(_env_file=None)
            assert settings.log_level == "INFO"
            assert settings.constant_r_reading == "interpreted"
            assert settings.s_hat_reading == "scalar"
            assert settings.qdet_shift == "printed"
            assert settings.seed == 0
            assert settings.max_wall_seconds == 600.0

    def test_get_settings_cached(self):
        """Test that get_settings returns cached instance."""
        load_settings.cache_clear()
        settings1 = get_settings()
        settings2 = get_settings()
        assert settings1 is settings2

    def test_scoped_settings(self):
        """Scoped updates apply inside the block and vanish after it."""
        base = get_settings()
        with scoped_settings(max_monomials=77, qdet_shift=None) as scoped:
            assert get_settings() is scoped
            assert get_settings().max_monomials == 77
            assert get_settings().qdet_shift == base.qdet_shift
        assert get_settings() is base
        assert base.max_monomials != 77
