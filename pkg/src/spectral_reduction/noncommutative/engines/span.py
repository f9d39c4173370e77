"""Degree-bounded span engine: exact sparse linear algebra over Q(q^{1/2}).

Only products ``x*r*y`` connected to the target through shared words are
assembled: rows outside that component cannot contribute to the target.
"""

import time
from collections import deque
from typing import Any

from sympy.polys.fields import FracElement

from spectral_reduction.algebra.qscalars import K
from spectral_reduction.exceptions import BudgetExceededError
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

RowKey = tuple[Word, int, Word]
Vector = dict[Word, FracElement]


class _RelationIndex:
    """Lookup of relations by the words they contain."""

    def __init__(self, rels: RelationSet):
        self.by_word: dict[Word, list[int]] = {}
        for k, rel in enumerate(rels.relations):
            for word in rel.terms:
                self.by_word.setdefault(word, []).append(k)
        self.lengths = sorted({len(w) for w in self.by_word})
        self.degrees = [rel.degree() for rel in rels.relations]

    def rows_containing(self, word: Word, degree_bound: int) -> list[RowKey]:
        found: list[RowKey] = []
        for length in self.lengths:
            for p in range(len(word) - length + 1):
                for k in self.by_word.get(word[p : p + length], ()):
                    left, right = word[:p], word[p + length :]
                    if len(left) + len(right) + self.degrees[k] <= degree_bound:
                        found.append((left, k, right))
        return found


class _Echelon:
    """Incremental row echelon form with cofactor tracking."""

    def __init__(self) -> None:
        self.pivots: dict[Word, tuple[Vector, dict[RowKey, FracElement]]] = {}

    def reduce(
        self, vector: Vector, combo: dict[RowKey, FracElement]
    ) -> tuple[Vector, dict[RowKey, FracElement]]:
        vector, combo = dict(vector), dict(combo)
        while True:
            hits = [w for w in vector if w in self.pivots]
            if not hits:
                return vector, combo
            word = max(hits, key=word_key)
            factor = vector[word]
            pivot_vec, pivot_combo = self.pivots[word]
            for w, c in pivot_vec.items():
                value = vector.get(w, K.zero) - factor * c
                if value:
                    vector[w] = value
                else:
                    vector.pop(w, None)
            for key, c in pivot_combo.items():
                value = combo.get(key, K.zero) - factor * c
                if value:
                    combo[key] = value
                else:
                    combo.pop(key, None)

    def insert(self, vector: Vector, combo: dict[RowKey, FracElement]) -> bool:
        vector, combo = self.reduce(vector, combo)
        if not vector:
            return False
        word = max(vector, key=word_key)
        inv = K.one / vector[word]
        self.pivots[word] = (
            {w: c * inv for w, c in vector.items()},
            {key: c * inv for key, c in combo.items()},
        )
        return True


class SpanEngine(MembershipEngine):
    """Complete-at-a-bound membership via the span of x*r*y products."""

    def __init__(self, max_monomials: int = 200_000, max_wall_seconds: float = 600.0):
        self._max_monomials = max_monomials
        self._max_wall_seconds = max_wall_seconds

    @property
    def name(self) -> str:
        return "span"

    def check(self, target: NCPoly, rels: RelationSet, degree_bound: int) -> MembershipResult:
        if target.is_zero():
            return MembershipResult("member", self.name, Certificate(target, []))

        started = time.monotonic()
        index = _RelationIndex(rels)
        words_seen: set[Word] = set(target.terms)
        queue: deque[Word] = deque(sorted(target.terms, key=word_key))
        rows: dict[RowKey, Vector] = {}

        while queue:
            word = queue.popleft()
            for key in index.rows_containing(word, degree_bound):
                if key in rows:
                    continue
                left, k, right = key
                vector = {left + w + right: c for w, c in rels.relations[k].terms.items()}
                rows[key] = vector
                for w in vector:
                    if w not in words_seen:
                        words_seen.add(w)
                        queue.append(w)
            self._check_budget(len(words_seen), len(rows), started)

        statistics: dict[str, Any] = {
            "monomials": len(words_seen),
            "rows": len(rows),
            "degree_bound": degree_bound,
        }
        logger.debug(f"Span engine assembled {len(rows)} rows over {len(words_seen)} words")

        echelon = _Echelon()
        for key in sorted(rows, key=lambda k: (word_key(k[0]), k[1], word_key(k[2]))):
            echelon.insert(rows[key], {key: K.one})
            self._check_budget(len(words_seen), len(rows), started)
        statistics["rank"] = len(echelon.pivots)

        remainder, combo = echelon.reduce(dict(target.terms), {})
        statistics["wall_time"] = round(time.monotonic() - started, 3)
        if remainder:
            return MembershipResult(
                "inconclusive",
                self.name,
                remainder=NCPoly(target.alphabet, K, remainder),
                statistics=statistics,
            )
        # target - sum(combo_k * row_k) = 0
        terms = [CertificateTerm(left, k, right, c) for (left, k, right), c in combo.items()]
        certificate = Certificate(target, merge_terms([_negate(t) for t in terms]))
        return MembershipResult("member", self.name, certificate, statistics=statistics)

    def _check_budget(self, monomials: int, rows: int, started: float) -> None:
        elapsed = time.monotonic() - started
        if monomials > self._max_monomials or elapsed > self._max_wall_seconds:
            raise BudgetExceededError(
                "Span engine budget exceeded",
                {"monomials": monomials, "rows": rows, "wall_time": round(elapsed, 3)},
            )


def _negate(term: CertificateTerm) -> CertificateTerm:
    return CertificateTerm(term.left, term.relation, term.right, -term.coeff)
