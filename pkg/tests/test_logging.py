"""Tests for logging helpers."""

import logging

from spectral_reduction.logging import get_logger, log_elapsed


class TestLogging:
    """Tests for package loggers."""

    def test_get_logger_namespaces(self):
        """Module names are placed under the package logger once."""
        assert get_logger("spectral_reduction.cli.suites").name == "spectral_reduction.cli.suites"
        assert get_logger("suites").name == "spectral_reduction.suites"

    def test_log_elapsed_levels(self, caplog):
        """Fast blocks log at DEBUG, slow ones at INFO."""
        logger = logging.getLogger("elapsed_test")
        with caplog.at_level(logging.DEBUG, logger="elapsed_test"):
            with log_elapsed(logger, "fast", threshold=60.0):
                pass
            with log_elapsed(logger, "slow", threshold=0.0):
                pass
        levels = {r.getMessage().split()[0]: r.levelno for r in caplog.records}
        assert levels == {"fast": logging.DEBUG, "slow": logging.INFO}
