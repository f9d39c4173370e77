"""Pytest fixtures for tests."""

import os

import pytest


@pytest.fixture(scope="session", autouse=True)
def setup_test_env():
    """Pin the settings that change verdicts before any tests run."""
    os.environ.setdefault("SPECTRAL_SEED", "0")
    os.environ.setdefault("SPECTRAL_CONSTANT_R_READING", "interpreted")
    os.environ.setdefault("SPECTRAL_S_HAT_READING", "scalar")
    os.environ.setdefault("SPECTRAL_QDET_SHIFT", "printed")
    yield


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Clear settings cache before each test."""
    from spectral_reduction.config import load_settings

    load_settings.cache_clear()
    yield
    load_settings.cache_clear()


@pytest.fixture(scope="session")
def model_21():
    """RTT model for N=2, n=1."""
    from spectral_reduction.quantum.rtt import build_model

    return build_model(2, 1, "interpreted")


@pytest.fixture(scope="session")
def reduction_21(model_21):
    """Reduction data for N=2, n=1 with the scalar S-hat reading."""
    from spectral_reduction.quantum.reduction import build_reduction

    return build_reduction(model_21, "scalar")


@pytest.fixture
def commuting_pair():
    """Alphabet for N=2, n=1 with the single relation mu21*mu22 - mu22*mu21."""
    from spectral_reduction.noncommutative.alphabet import Alphabet, GenId
    from spectral_reduction.noncommutative.polynomial import NCPoly
    from spectral_reduction.noncommutative.relations import RelationSet

    alphabet = Alphabet.build(2, 1)
    x = NCPoly.generator(alphabet, GenId.mu(2, 1))
    y = NCPoly.generator(alphabet, GenId.mu(2, 2))
    rels = RelationSet.collect(alphabet, [(x * y - y * x, "comm")])
    return alphabet, x, y, rels
