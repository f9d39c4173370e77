"""Sparse noncommutative polynomials and matrices over them.

Words are tuples of generator positions in an :class:`Alphabet`. Coefficients
live either in the scalar field Q(q^{1/2}) or in a commutative polynomial ring
over it (spectral variables); coefficients commute with every generator.
"""

from collections import defaultdict
from collections.abc import Iterable, Iterator
from typing import Any, Union

from sympy import QQ
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement, PolyRing

from spectral_reduction.algebra.qscalars import (
    K,
    classical_ring,
    ring_variables,
    specialize_field,
    to_field,
)
from spectral_reduction.exceptions import AlphabetMismatchError, VariableMismatchError
from spectral_reduction.noncommutative.alphabet import Alphabet, GenId

Word = tuple[int, ...]
Domain = Union[PolyRing, Any]  # PolyRing or the scalar field domain K
Coefficient = Union[PolyElement, FracElement]


def word_key(word: Word) -> tuple[int, Word]:
    """Graded left-lexicographic sort key."""
    return (len(word), word)


def coerce(domain: Domain, value: Any) -> Coefficient:
    if isinstance(domain, PolyRing):
        if isinstance(value, PolyElement):
            if value.ring != domain:
                return value.set_ring(domain)
            return value
        return domain.ground_new(to_field(value))
    return to_field(value)


class NCPoly:
    """Immutable sparse map from words to nonzero coefficients."""

    __slots__ = ("alphabet", "domain", "terms")

    def __init__(self, alphabet: Alphabet, domain: Domain, terms: dict[Word, Coefficient]):
        self.alphabet = alphabet
        self.domain = domain
        self.terms = terms

    # Construction

    @classmethod
    def zero(cls, alphabet: Alphabet, domain: Domain = K) -> "NCPoly":
        return cls(alphabet, domain, {})

    @classmethod
    def constant(cls, alphabet: Alphabet, value: Any, domain: Domain = K) -> "NCPoly":
        coeff = coerce(domain, value)
        return cls(alphabet, domain, {(): coeff} if coeff else {})

    @classmethod
    def generator(cls, alphabet: Alphabet, gen: GenId, domain: Domain = K) -> "NCPoly":
        return cls(alphabet, domain, {(alphabet.position(gen),): domain.one})

    @classmethod
    def from_terms(
        cls, alphabet: Alphabet, domain: Domain, terms: Iterable[tuple[Word, Coefficient]]
    ) -> "NCPoly":
        acc: dict[Word, Coefficient] = {}
        zero = domain.zero
        for word, coeff in terms:
            acc[word] = acc.get(word, zero) + coeff
        return cls(alphabet, domain, {w: c for w, c in acc.items() if c})

    # Structure

    def _check(self, other: "NCPoly") -> None:
        if not self.alphabet.compatible(other.alphabet):
            raise AlphabetMismatchError("Noncommutative polynomials over different alphabets")
        if self.domain != other.domain:
            names = ring_variables(self.domain) if isinstance(self.domain, PolyRing) else ()
            other_names = (
                ring_variables(other.domain) if isinstance(other.domain, PolyRing) else ()
            )
            raise VariableMismatchError(names, other_names)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def homogeneous_components(self) -> dict[int, "NCPoly"]:
        parts: dict[int, dict[Word, Coefficient]] = defaultdict(dict)
        for word, coeff in self.terms.items():
            parts[len(word)][word] = coeff
        return {d: NCPoly(self.alphabet, self.domain, t) for d, t in sorted(parts.items())}

    def leading_word(self) -> Word:
        return max(self.terms, key=word_key)

    def sorted_terms(self) -> list[tuple[Word, Coefficient]]:
        return sorted(self.terms.items(), key=lambda item: word_key(item[0]), reverse=True)

    def with_alphabet(self, alphabet: Alphabet) -> "NCPoly":
        """Re-home onto an alphabet that extends this one with trailing generators."""
        if alphabet.gens[: len(self.alphabet.gens)] != self.alphabet.gens:
            raise AlphabetMismatchError("Target alphabet does not extend the source alphabet")
        return NCPoly(alphabet, self.domain, self.terms)

    def with_domain(self, domain: Domain) -> "NCPoly":
        if domain == self.domain:
            return self
        return NCPoly.from_terms(
            self.alphabet, domain, ((w, coerce(domain, c)) for w, c in self.terms.items())
        )

    # Arithmetic

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        terms = dict(self.terms)
        zero = self.domain.zero
        for word, coeff in other.terms.items():
            total = terms.get(word, zero) + coeff
            if total:
                terms[word] = total
            else:
                terms.pop(word, None)
        return NCPoly(self.alphabet, self.domain, terms)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.alphabet, self.domain, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        acc: dict[Word, Coefficient] = {}
        zero = self.domain.zero
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                acc[word] = acc.get(word, zero) + c1 * c2
        return NCPoly(self.alphabet, self.domain, {w: c for w, c in acc.items() if c})

    def scale(self, factor: Any) -> "NCPoly":
        lifted = coerce(self.domain, factor)
        if not lifted:
            return NCPoly(self.alphabet, self.domain, {})
        terms = {w: c * lifted for w, c in self.terms.items()}
        return NCPoly(self.alphabet, self.domain, {w: c for w, c in terms.items() if c})

    def lmul_word(self, left: Word, right: Word = ()) -> "NCPoly":
        """``left * self * right`` for words."""
        return NCPoly(
            self.alphabet, self.domain, {left + w + right: c for w, c in self.terms.items()}
        )

    def __pow__(self, power: int) -> "NCPoly":
        result = NCPoly.constant(self.alphabet, 1, self.domain)
        for _ in range(power):
            result = result * self
        return result

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet.compatible(other.alphabet) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms, key=word_key)))

    # Commutative views

    def split_commutative(self) -> dict[tuple[int, ...], "NCPoly"]:
        """Split ring coefficients by commutative monomial into scalar NCPolys."""
        if not isinstance(self.domain, PolyRing):
            return {(): self} if self.terms else {}
        parts: dict[tuple[int, ...], dict[Word, Coefficient]] = defaultdict(dict)
        for word, coeff in self.terms.items():
            for monom, scalar in coeff.terms():
                parts[monom][word] = scalar
        return {m: NCPoly(self.alphabet, K, t) for m, t in sorted(parts.items())}

    def specialize_commutative(self, value: int = 1) -> PolyElement:
        """Send q to ``value`` and the generators to commuting symbols."""
        extra = ring_variables(self.domain) if isinstance(self.domain, PolyRing) else ()
        ring = classical_ring(tuple(self.alphabet.names()) + extra)
        offset = len(self.alphabet)
        acc = ring.zero
        for word, coeff in self.terms.items():
            exponents = [0] * ring.ngens
            for g in word:
                exponents[g] += 1
            pieces = coeff.terms() if isinstance(coeff, PolyElement) else [((), coeff)]
            for monom, scalar in pieces:
                value_q = specialize_field(scalar, value)
                if not value_q:
                    continue
                exps = list(exponents)
                for k, e in enumerate(monom):
                    exps[offset + k] += e
                acc += ring.from_dict({tuple(exps): QQ(value_q.numerator, value_q.denominator)})
        return acc

    # Text

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({coeff})*{self.alphabet.word_text(word)}" for word, coeff in self.sorted_terms()
        )

    def __repr__(self) -> str:
        return f"NCPoly({self.to_text()})"


class NCMatrix:
    """Dense rows x cols matrix with NCPoly entries; products keep entry order."""

    __slots__ = ("rows", "cols", "entries", "alphabet", "domain")

    def __init__(self, entries: list[list[NCPoly]], alphabet: Alphabet, domain: Domain):
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        self.alphabet = alphabet
        self.domain = domain

    @classmethod
    def zeros(cls, rows: int, cols: int, alphabet: Alphabet, domain: Domain = K) -> "NCMatrix":
        return cls(
            [[NCPoly.zero(alphabet, domain) for _ in range(cols)] for _ in range(rows)],
            alphabet,
            domain,
        )

    @classmethod
    def identity(cls, dim: int, alphabet: Alphabet, domain: Domain = K) -> "NCMatrix":
        out = cls.zeros(dim, dim, alphabet, domain)
        for i in range(dim):
            out.entries[i][i] = NCPoly.constant(alphabet, 1, domain)
        return out

    @classmethod
    def from_cmatrix(
        cls,
        C: Any,
        alphabet: Alphabet,
        domain: Domain = K,
        substitutions: dict[str, NCPoly] | None = None,
    ) -> "NCMatrix":
        """Lift a C-number matrix, replacing named ring variables by NCPolys.

        Remaining variables must belong to ``domain`` (a PolyRing) by name.
        Substituted NCPolys are lifted into ``domain`` first.
        """
        substitutions = {
            name: value.with_domain(domain) for name, value in (substitutions or {}).items()
        }
        names = ring_variables(C.ring)
        target_names = ring_variables(domain) if isinstance(domain, PolyRing) else ()
        out = cls.zeros(C.rows, C.cols, alphabet, domain)
        one = NCPoly.constant(alphabet, 1, domain)
        for (i, j), poly in C.nonzero():
            total = NCPoly.zero(alphabet, domain)
            for monom, scalar in poly.terms():
                factor = one
                ring_exps = [0] * len(target_names)
                for name, e in zip(names, monom, strict=True):
                    if not e:
                        continue
                    if name in substitutions:
                        factor = factor * substitutions[name] ** e
                    elif name in target_names:
                        ring_exps[target_names.index(name)] += e
                    else:
                        raise VariableMismatchError(names, target_names)
                if isinstance(domain, PolyRing):
                    coeff = domain.from_dict({tuple(ring_exps): scalar})
                else:
                    coeff = scalar
                total = total + factor.scale(coeff)
            out.entries[i][j] = total
        return out

    def __getitem__(self, key: tuple[int, int]) -> NCPoly:
        i, j = key
        return self.entries[i][j]

    def __iter__(self) -> Iterator[tuple[int, int, NCPoly]]:
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                yield i, j, value

    def __matmul__(self, other: "NCMatrix") -> "NCMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = NCMatrix.zeros(self.rows, other.cols, self.alphabet, self.domain)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.entries[i][k]
                if not a:
                    continue
                for j in range(other.cols):
                    b = other.entries[k][j]
                    if b:
                        out.entries[i][j] = out.entries[i][j] + a * b
        return out

    def __add__(self, other: "NCMatrix") -> "NCMatrix":
        return NCMatrix(
            [[a + b for a, b in zip(ra, rb, strict=True)] for ra, rb in zip(self.entries, other.entries, strict=True)],
            self.alphabet,
            self.domain,
        )

    def __sub__(self, other: "NCMatrix") -> "NCMatrix":
        return NCMatrix(
            [[a - b for a, b in zip(ra, rb, strict=True)] for ra, rb in zip(self.entries, other.entries, strict=True)],
            self.alphabet,
            self.domain,
        )

    def scale(self, factor: Any) -> "NCMatrix":
        return NCMatrix(
            [[a.scale(factor) for a in row] for row in self.entries], self.alphabet, self.domain
        )

    def kron(self, other: "NCMatrix") -> "NCMatrix":
        """``self (x) other``: entry products keep ``self`` on the left."""
        rows, cols = self.rows * other.rows, self.cols * other.cols
        out = NCMatrix.zeros(rows, cols, self.alphabet, self.domain)
        for i1, j1, a in self:
            if not a:
                continue
            for i2, j2, b in other:
                if b:
                    out.entries[i1 * other.rows + i2][j1 * other.cols + j2] = a * b
        return out

    def conjugate_by_permutation(self, perm: list[int]) -> "NCMatrix":
        out = NCMatrix.zeros(self.rows, self.cols, self.alphabet, self.domain)
        for i, j, value in self:
            out.entries[perm[i]][perm[j]] = value
        return out

    def map(self, fn: Any) -> "NCMatrix":
        return NCMatrix([[fn(a) for a in row] for row in self.entries], self.alphabet, self.domain)

    def is_zero(self) -> bool:
        return all(not a for _, _, a in self)

    def with_alphabet(self, alphabet: Alphabet) -> "NCMatrix":
        return NCMatrix(
            [[a.with_alphabet(alphabet) for a in row] for row in self.entries], alphabet, self.domain
        )

    def with_domain(self, domain: Domain) -> "NCMatrix":
        return NCMatrix(
            [[a.with_domain(domain) for a in row] for row in self.entries], self.alphabet, domain
        )


class GradedNCMatrix:
    """Polynomial in z with NCMatrix coefficients: ``sum_a coeffs[a] z^a``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: list[NCMatrix]):
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, a: int) -> NCMatrix:
        return self.coeffs[a]

    def evaluate(self, variable: str, domain: PolyRing, scale_power: Any = None) -> NCMatrix:
        """Assemble ``sum_a coeffs[a] * (variable * c)^a`` over ``domain``.

        ``scale_power(a)`` optionally supplies a scalar multiplier for ``z^a``.
        """
        names = ring_variables(domain)
        gen = domain.gens[names.index(variable)]
        total: NCMatrix | None = None
        for a, coeff in enumerate(self.coeffs):
            factor = gen**a
            if scale_power is not None:
                factor = factor * domain.ground_new(scale_power(a))
            term = coeff.with_domain(domain).scale(factor)
            total = term if total is None else total + term
        assert total is not None
        return total

    def __matmul__(self, other: "GradedNCMatrix") -> "GradedNCMatrix":
        coeffs: list[NCMatrix | None] = [None] * (self.degree + other.degree + 1)
        for a, A in enumerate(self.coeffs):
            for b, B in enumerate(other.coeffs):
                prod = A @ B
                coeffs[a + b] = prod if coeffs[a + b] is None else coeffs[a + b] + prod  # type: ignore[operator]
        return GradedNCMatrix([c for c in coeffs if c is not None])
