"""Tests for Spectral Reduction."""
