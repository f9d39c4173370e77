"""Rewriting engine: normal forms modulo oriented relations.

Relations are first echelonized so that every rule has its own leading word
under the graded left-lexicographic order; each rewrite then replaces an
occurrence of a leading word by the smaller tail. Confluence is not assumed:
a zero normal form certifies membership, a nonzero one is inconclusive.
"""

import heapq
import time
from dataclasses import dataclass

from sympy.polys.fields import FracElement

from spectral_reduction.algebra.qscalars import K
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.engines.base import (
    Certificate,
    CertificateTerm,
    MembershipEngine,
    MembershipResult,
    merge_terms,
)
from spectral_reduction.noncommutative.polynomial import NCPoly, Word, word_key
from spectral_reduction.noncommutative.relations import RelationSet

logger = get_logger(__name__)


def _descending(word: Word) -> tuple[int, tuple[int, ...]]:
    """Heap key that pops the largest word under word_key first."""
    return (-len(word), tuple(-g for g in word))


@dataclass(frozen=True)
class Rule:
    """Monic oriented relation ``lead - tail`` as a combination of input relations."""

    lead: Word
    poly: dict[Word, FracElement]
    combination: dict[int, FracElement]


def orient(rels: RelationSet) -> list[Rule]:
    """Echelonize the relations so leading words are pairwise distinct."""
    pivots: dict[Word, Rule] = {}
    for k, rel in enumerate(rels.relations):
        vector = dict(rel.terms)
        combo: dict[int, FracElement] = {k: K.one}
        while vector:
            lead = max(vector, key=word_key)
            if lead not in pivots:
                inv = K.one / vector[lead]
                pivots[lead] = Rule(
                    lead,
                    {w: c * inv for w, c in vector.items()},
                    {j: c * inv for j, c in combo.items()},
                )
                break
            factor = vector[lead]
            rule = pivots[lead]
            for w, c in rule.poly.items():
                value = vector.get(w, K.zero) - factor * c
                if value:
                    vector[w] = value
                else:
                    vector.pop(w, None)
            for j, c in rule.combination.items():
                value = combo.get(j, K.zero) - factor * c
                if value:
                    combo[j] = value
                else:
                    combo.pop(j, None)
    return [pivots[w] for w in sorted(pivots, key=word_key)]


class RewritingEngine(MembershipEngine):
    """Fast, incomplete membership by rewriting to a normal form."""

    def __init__(self, max_steps: int = 50_000, max_wall_seconds: float = 600.0):
        self._max_steps = max_steps
        self._max_wall_seconds = max_wall_seconds
        self._cache: tuple[RelationSet, list[Rule]] | None = None

    @property
    def name(self) -> str:
        return "rewriting"

    def _rules(self, rels: RelationSet) -> list[Rule]:
        if self._cache is None or self._cache[0] is not rels:
            self._cache = (rels, orient(rels))
        return self._cache[1]

    def normal_form(
        self, target: NCPoly, rels: RelationSet
    ) -> tuple[NCPoly, list[CertificateTerm], dict[str, int | float | bool]]:
        """Rewrite ``target``; returns (normal form, cofactors, statistics).

        ``target - normal_form = sum(cofactors)`` holds exactly.
        """
        started = time.monotonic()
        rules = self._rules(rels)
        by_lead = {rule.lead: rule for rule in rules}
        lengths = sorted({len(rule.lead) for rule in rules}, reverse=True)
        vector = dict(target.terms)
        # max-heap on word_key; rewrites only introduce smaller words
        heap = [(_descending(w), w) for w in vector]
        heapq.heapify(heap)
        cofactors: list[CertificateTerm] = []
        steps = 0
        exhausted = False

        while heap:
            _, word = heapq.heappop(heap)
            if word not in vector:
                continue
            match = self._find_match(word, by_lead, lengths)
            if match is None:
                continue
            if steps >= self._max_steps or time.monotonic() - started > self._max_wall_seconds:
                exhausted = True
                break
            p, rule = match
            left, right = word[:p], word[p + len(rule.lead) :]
            factor = vector[word]
            for w, c in rule.poly.items():
                key = left + w + right
                value = vector.get(key, K.zero) - factor * c
                if value:
                    if key not in vector:
                        heapq.heappush(heap, (_descending(key), key))
                    vector[key] = value
                else:
                    vector.pop(key, None)
            for j, c in rule.combination.items():
                cofactors.append(CertificateTerm(left, j, right, factor * c))
            steps += 1

        statistics: dict[str, int | float | bool] = {
            "rewrite_steps": steps,
            "rules": len(rules),
            "step_limit_reached": exhausted,
            "wall_time": round(time.monotonic() - started, 3),
        }
        logger.debug(f"Normal form after {steps} steps, {len(vector)} words remain")
        return NCPoly(target.alphabet, K, vector), merge_terms(cofactors), statistics

    @staticmethod
    def _find_match(
        word: Word, by_lead: dict[Word, Rule], lengths: list[int]
    ) -> tuple[int, Rule] | None:
        """Leftmost occurrence of the longest matching leading word."""
        for length in lengths:
            for p in range(len(word) - length + 1):
                rule = by_lead.get(word[p : p + length])
                if rule is not None:
                    return p, rule
        return None

    def check(
        self, target: NCPoly, rels: RelationSet, degree_bound: int | None = None
    ) -> MembershipResult:
        remainder, cofactors, statistics = self.normal_form(target, rels)
        if remainder.is_zero():
            return MembershipResult(
                "member", self.name, Certificate(target, cofactors), statistics=dict(statistics)
            )
        if statistics["step_limit_reached"]:
            logger.info("Rewriting stopped at the step limit; result inconclusive")
        return MembershipResult(
            "inconclusive",
            self.name,
            certificate=Certificate(target, cofactors),
            remainder=remainder,
            statistics=dict(statistics),
        )
