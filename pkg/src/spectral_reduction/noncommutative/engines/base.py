"""Base membership engine abstraction and certificates."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Literal

from sympy.polys.fields import FracElement

from spectral_reduction.noncommutative.polynomial import NCPoly, Word
from spectral_reduction.noncommutative.relations import RelationSet

Status = Literal["member", "inconclusive"]


@dataclass(frozen=True)
class CertificateTerm:
    """One summand ``coeff * left * relations[relation] * right``."""

    left: Word
    relation: int
    right: Word
    coeff: FracElement


@dataclass
class Certificate:
    """Witness that ``target`` lies in the ideal generated by a relation set."""

    target: NCPoly
    terms: list[CertificateTerm] = field(default_factory=list)

    def replay(self, rels: RelationSet) -> NCPoly:
        total = NCPoly.zero(self.target.alphabet, self.target.domain)
        for term in self.terms:
            piece = rels.relations[term.relation].lmul_word(term.left, term.right)
            total = total + piece.scale(term.coeff)
        return total

    def verify(self, rels: RelationSet) -> bool:
        return self.replay(rels) == self.target


def merge_terms(terms: list[CertificateTerm]) -> list[CertificateTerm]:
    """Combine summands with the same (left, relation, right), dropping zeros."""
    acc: dict[tuple[Word, int, Word], FracElement] = {}
    for t in terms:
        key = (t.left, t.relation, t.right)
        acc[key] = acc[key] + t.coeff if key in acc else t.coeff
    return [CertificateTerm(l, r, rt, c) for (l, r, rt), c in sorted(acc.items()) if c]


@dataclass
class MembershipResult:
    """Verdict of a membership check; ``inconclusive`` is never a refutation."""

    status: Status
    engine: str
    certificate: Certificate | None = None
    remainder: NCPoly | None = None
    statistics: dict[str, Any] = field(default_factory=dict)

    @property
    def is_member(self) -> bool:
        return self.status == "member"


class MembershipEngine(ABC):
    """Abstract base class for ideal-membership engines."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Engine identifier used in reports."""
        ...

    @abstractmethod
    def check(self, target: NCPoly, rels: RelationSet, degree_bound: int) -> MembershipResult:
        """Decide (or fail to decide) membership of a scalar-coefficient target.

        Args:
            target: Polynomial with coefficients in Q(q^{1/2}).
            rels: Ideal generators over the same alphabet.
            degree_bound: Maximum word length of products x*r*y considered.

        Returns:
            Membership verdict with certificate on success.

        Raises:
            BudgetExceededError: If the engine's resource budget is exhausted.
        """
        ...
