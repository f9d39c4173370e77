"""Noncommutative polynomials over Q(q^{1/2}), relation sets and ideal membership."""

from spectral_reduction.noncommutative.alphabet import Alphabet, GenId, GenKind
from spectral_reduction.noncommutative.polynomial import GradedNCMatrix, NCMatrix, NCPoly
from spectral_reduction.noncommutative.relations import RelationSet, enable_localization
from spectral_reduction.noncommutative.engines import Certificate, MembershipResult
from spectral_reduction.noncommutative.membership import MembershipChecker, verify_membership
from spectral_reduction.noncommutative.serialization import replay_certificate

__all__ = [
    "Alphabet",
    "Certificate",
    "GenId",
    "GenKind",
    "GradedNCMatrix",
    "MembershipChecker",
    "MembershipResult",
    "NCMatrix",
    "NCPoly",
    "RelationSet",
    "enable_localization",
    "replay_certificate",
    "verify_membership",
]
