"""Command-line interface and suite runner."""

from spectral_reduction.cli.main import build_parser, main
from spectral_reduction.cli.suites import SuiteRunner, run_suite

__all__ = [
    "SuiteRunner",
    "build_parser",
    "main",
    "run_suite",
]
