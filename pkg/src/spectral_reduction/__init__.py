"""Spectral Reduction - exact verification of a reduced quantum integrable model."""

__version__ = "0.1.0"
