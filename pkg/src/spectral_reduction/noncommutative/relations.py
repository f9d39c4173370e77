"""Relation sets: RTT generators plus optional localization relations."""

from dataclasses import dataclass

from spectral_reduction.algebra.qscalars import K
from spectral_reduction.exceptions import AlgebraError, LocalizationError
from spectral_reduction.noncommutative.alphabet import Alphabet, GenId
from spectral_reduction.noncommutative.polynomial import NCMatrix, NCPoly, word_key


def monic(poly: NCPoly) -> NCPoly:
    """Scale so the leading word has coefficient 1."""
    lead = poly.terms[poly.leading_word()]
    return poly.scale(K.one / lead)


@dataclass(frozen=True)
class RelationSet:
    """Generators of a two-sided ideal with per-relation provenance."""

    alphabet: Alphabet
    relations: tuple[NCPoly, ...]
    provenance: tuple[str, ...]
    homogeneous: bool

    @classmethod
    def collect(
        cls, alphabet: Alphabet, candidates: list[tuple[NCPoly, str]], homogeneous: bool = True
    ) -> "RelationSet":
        """Deduplicate up to scalar multiples, keeping first provenance."""
        seen: set[tuple] = set()
        relations: list[NCPoly] = []
        provenance: list[str] = []
        for poly, origin in candidates:
            if poly.is_zero():
                continue
            if homogeneous and not (poly.is_homogeneous() and poly.degree() == 2):
                raise AlgebraError(f"Relation {origin} is not homogeneous of degree 2")
            normalized = monic(poly)
            key = tuple(sorted(normalized.terms.items(), key=lambda t: word_key(t[0])))
            if key in seen:
                continue
            seen.add(key)
            relations.append(poly)
            provenance.append(origin)
        return cls(alphabet, tuple(relations), tuple(provenance), homogeneous)

    def __len__(self) -> int:
        return len(self.relations)

    def with_alphabet(self, alphabet: Alphabet) -> "RelationSet":
        return RelationSet(
            alphabet,
            tuple(r.with_alphabet(alphabet) for r in self.relations),
            self.provenance,
            self.homogeneous,
        )

    def extended(self, extra: list[tuple[NCPoly, str]], homogeneous: bool) -> "RelationSet":
        return RelationSet(
            self.alphabet,
            self.relations + tuple(p for p, _ in extra),
            self.provenance + tuple(o for _, o in extra),
            self.homogeneous and homogeneous,
        )

    def relation_id(self, index: int) -> str:
        return f"r{index}"


def enable_localization(rels: RelationSet, S: NCMatrix) -> tuple[RelationSet, NCMatrix]:
    """Adjoin sigma = S^{-1} with two-sided inverse relations.

    Returns the extended relation set and the sigma matrix over the new alphabet.
    """
    if rels.alphabet.localized:
        raise LocalizationError("Localization already enabled")
    alphabet = rels.alphabet.with_localization()
    N = alphabet.N
    S_loc = S.with_alphabet(alphabet)
    sigma = NCMatrix.zeros(N, N, alphabet)
    for i in range(N):
        for j in range(N):
            sigma.entries[i][j] = NCPoly.generator(alphabet, GenId.sigma_inv(i + 1, j + 1))
    left, right = S_loc @ sigma, sigma @ S_loc
    extra: list[tuple[NCPoly, str]] = []
    one = NCPoly.constant(alphabet, 1)
    for name, product in (("S*sigma", left), ("sigma*S", right)):
        for i in range(N):
            for j in range(N):
                relation = product[i, j] - (one if i == j else NCPoly.zero(alphabet))
                extra.append((relation, f"{name}[{i + 1}{j + 1}]"))
    return rels.with_alphabet(alphabet).extended(extra, homogeneous=False), sigma
