"""Ideal membership: rewriting first, span engine on whatever is left.

Targets with spectral-variable coefficients are split by commutative
monomial; each scalar component is checked separately and the verdict is
``member`` only if every component is.
"""

from dataclasses import dataclass, field
from typing import Any

from spectral_reduction.config import get_settings
from spectral_reduction.exceptions import BudgetExceededError
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.engines.base import (
    Certificate,
    MembershipResult,
    merge_terms,
)
from spectral_reduction.noncommutative.engines.rewriting import RewritingEngine
from spectral_reduction.noncommutative.engines.span import SpanEngine
from spectral_reduction.noncommutative.polynomial import NCPoly
from spectral_reduction.noncommutative.relations import RelationSet

logger = get_logger(__name__)


def default_degree_bound(target: NCPoly) -> int:
    return max(target.degree(), 0) + get_settings().default_degree_slack


def ideal_membership(
    target: NCPoly, rels: RelationSet, degree_bound: int | None = None
) -> MembershipResult:
    """Span-based membership at a degree bound (scalar coefficients).

    Raises:
        BudgetExceededError: If the span assembly exceeds its budget.
    """
    settings = get_settings()
    bound = degree_bound if degree_bound is not None else default_degree_bound(target)
    engine = SpanEngine(settings.max_monomials, settings.max_wall_seconds)
    if rels.homogeneous and not target.is_homogeneous():
        return _per_component(engine, target, rels, bound)
    return engine.check(target, rels, bound)


def _per_component(
    engine: SpanEngine, target: NCPoly, rels: RelationSet, bound: int
) -> MembershipResult:
    terms = []
    statistics: dict[str, Any] = {"components": 0}
    for part in target.homogeneous_components().values():
        result = engine.check(part, rels, bound)
        statistics["components"] += 1
        if not result.is_member:
            result.statistics.update(statistics)
            return result
        assert result.certificate is not None
        terms.extend(result.certificate.terms)
    return MembershipResult(
        "member", engine.name, Certificate(target, merge_terms(terms)), statistics=statistics
    )


def normal_form(target: NCPoly, rels: RelationSet, max_steps: int | None = None) -> NCPoly:
    """Rewrite ``target`` modulo the oriented relations (graded left-lex order)."""
    settings = get_settings()
    engine = RewritingEngine(max_steps or settings.max_rewrite_steps, settings.max_wall_seconds)
    remainder, _, _ = engine.normal_form(target, rels)
    return remainder


class MembershipChecker:
    """Rewriting with span fallback, reusing oriented rules across targets."""

    def __init__(self, rels: RelationSet, degree_bound: int | None = None):
        settings = get_settings()
        self.rels = rels
        self.degree_bound = degree_bound
        self._rewriting = RewritingEngine(settings.max_rewrite_steps, settings.max_wall_seconds)

    def check_scalar(self, target: NCPoly) -> MembershipResult:
        """Membership of a target with Q(q^{1/2}) coefficients."""
        if target.is_zero():
            return MembershipResult("member", "trivial", Certificate(target, []))
        bound = self.degree_bound if self.degree_bound is not None else default_degree_bound(target)
        rewritten = self._rewriting.check(target, self.rels)
        if rewritten.is_member:
            return rewritten
        assert rewritten.remainder is not None and rewritten.certificate is not None
        try:
            fallback = ideal_membership(rewritten.remainder, self.rels, bound)
        except BudgetExceededError as e:
            logger.info(f"Span fallback exhausted its budget: {e}")
            statistics = {**rewritten.statistics, **e.statistics, "budget_exceeded": True}
            return MembershipResult(
                "inconclusive", "rewriting+span", remainder=rewritten.remainder, statistics=statistics
            )
        statistics = {**rewritten.statistics, **fallback.statistics}
        if not fallback.is_member:
            return MembershipResult(
                "inconclusive",
                "rewriting+span",
                remainder=fallback.remainder,
                statistics=statistics,
            )
        assert fallback.certificate is not None
        # target = remainder + rewriting cofactors, remainder = span certificate
        terms = merge_terms(rewritten.certificate.terms + fallback.certificate.terms)
        return MembershipResult(
            "member", "rewriting+span", Certificate(target, terms), statistics=statistics
        )

    def check(self, target: NCPoly) -> "SplitResult":
        """Membership of every commutative-monomial component of ``target``."""
        parts = target.split_commutative()
        results = {monom: self.check_scalar(part) for monom, part in parts.items()}
        return SplitResult(results)


@dataclass
class SplitResult:
    """Per-monomial membership results of one target."""

    components: dict[tuple[int, ...], MembershipResult] = field(default_factory=dict)

    @property
    def is_member(self) -> bool:
        return all(r.is_member for r in self.components.values())

    @property
    def status(self) -> str:
        return "member" if self.is_member else "inconclusive"

    def certificates(self) -> list[Certificate]:
        return [r.certificate for r in self.components.values() if r.certificate is not None]

    def statistics(self) -> dict[str, Any]:
        merged: dict[str, Any] = {"components": len(self.components)}
        for key in ("rewrite_steps", "rows", "monomials"):
            values = [r.statistics.get(key, 0) for r in self.components.values()]
            merged[key] = sum(v for v in values if isinstance(v, int | float))
        return merged


def verify_membership(
    target: NCPoly, rels: RelationSet, degree_bound: int | None = None
) -> SplitResult:
    """One-shot convenience wrapper around :class:`MembershipChecker`."""
    return MembershipChecker(rels, degree_bound).check(target)
