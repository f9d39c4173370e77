"""Ideal-membership engines."""

from spectral_reduction.noncommutative.engines.base import (
    Certificate,
    CertificateTerm,
    MembershipEngine,
    MembershipResult,
)
from spectral_reduction.noncommutative.engines.rewriting import RewritingEngine
from spectral_reduction.noncommutative.engines.span import SpanEngine

__all__ = [
    "Certificate",
    "CertificateTerm",
    "MembershipEngine",
    "MembershipResult",
    "RewritingEngine",
    "SpanEngine",
]
