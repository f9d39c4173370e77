"""Exact coefficient arithmetic over Q(q^{1/2}) and commutative polynomials over it.

The base symbol is ``s = q^{1/2}``; ``q`` itself is ``s**2``. Every coefficient
lives in the rational function field ``Q(s)``, which sympy keeps canonical
(cancelled numerator/denominator with a normalized denominator unit), so
equality is syntactic.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from spectral_reduction.exceptions import (
    SingularSpecializationError,
    VariableMismatchError,
    ZeroDivisionScalarError,
)

SCALAR_FIELD, S_HALF = field("s", QQ)
K = SCALAR_FIELD.to_domain()
Q = S_HALF**2
Q_INV = S_HALF**-2
Q_MINUS_QINV = Q - Q_INV

Rational = Union[int, Fraction]
ScalarLike = Union["ScalarQ", FracElement, int, Fraction]


def to_field(value: ScalarLike) -> FracElement:
    """Coerce an integer, Fraction, ScalarQ or raw field element into Q(s)."""
    if isinstance(value, ScalarQ):
        return value.value
    if isinstance(value, FracElement):
        return value
    if isinstance(value, Fraction):
        return SCALAR_FIELD(QQ(value.numerator, value.denominator))
    return SCALAR_FIELD(value)


def _qq_to_fraction(c: object) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))  # type: ignore[attr-defined]


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def _evaluate_univariate(poly: PolyElement, value: Fraction) -> Fraction:
    total = Fraction(0)
    for (exponent,), coeff in poly.terms():
        total += _qq_to_fraction(coeff) * value**exponent
    return total


def specialize_field(element: FracElement, value: Rational) -> Fraction:
    """Evaluate a field element at ``q = value`` exactly.

    Odd powers of ``s`` need ``value`` to be a perfect rational square.

    Raises:
        SingularSpecializationError: If the denominator vanishes at ``value``.
        ValueError: If ``q^{1/2}`` is not rational at ``value`` but is needed.
    """
    value = Fraction(value)
    exponents = [e for (e,), _ in element.numer.terms()] + [
        e for (e,), _ in element.denom.terms()
    ]
    if all(e % 2 == 0 for e in exponents):
        numer = sum(
            (_qq_to_fraction(c) * value ** (e // 2) for (e,), c in element.numer.terms()),
            Fraction(0),
        )
        denom = sum(
            (_qq_to_fraction(c) * value ** (e // 2) for (e,), c in element.denom.terms()),
            Fraction(0),
        )
    else:
        root = _rational_sqrt(value)
        if root is None:
            raise ValueError(f"q^(1/2) is irrational at q={value}")
        numer = _evaluate_univariate(element.numer, root)
        denom = _evaluate_univariate(element.denom, root)
    if denom == 0:
        raise SingularSpecializationError(str(element.denom), value)
    return numer / denom


def derivative_at_classical_point(element: FracElement) -> Fraction:
    """Return ``c`` with ``d/dγ f(e^{iγ})|_{γ=0} = i·c``.

    With ``s = e^{iγ/2}`` one has ``ds/dγ = (i/2)s``, so ``c = f'(1)/2``.
    """
    return specialize_field(element.diff(S_HALF), 1) / 2


@dataclass(frozen=True)
class ScalarQ:
    """Immutable exact element of Q(q^{1/2})."""

    value: FracElement

    @classmethod
    def of(cls, value: ScalarLike) -> "ScalarQ":
        return cls(to_field(value))

    @classmethod
    def q(cls, power: int = 1) -> "ScalarQ":
        return cls(S_HALF ** (2 * power))

    @classmethod
    def q_half(cls, power: int = 1) -> "ScalarQ":
        return cls(S_HALF**power)

    def is_zero(self) -> bool:
        return not self.value

    def canonical(self) -> "ScalarQ":
        return ScalarQ(SCALAR_FIELD.new(self.value.numer, self.value.denom))

    def __add__(self, other: ScalarLike) -> "ScalarQ":
        return ScalarQ(self.value + to_field(other))

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "ScalarQ":
        return ScalarQ(self.value - to_field(other))

    def __rsub__(self, other: ScalarLike) -> "ScalarQ":
        return ScalarQ(to_field(other) - self.value)

    def __mul__(self, other: ScalarLike) -> "ScalarQ":
        return ScalarQ(self.value * to_field(other))

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "ScalarQ":
        divisor = to_field(other)
        if not divisor:
            raise ZeroDivisionScalarError(f"Division of {self.to_text()} by zero")
        return ScalarQ(self.value / divisor)

    def __rtruediv__(self, other: ScalarLike) -> "ScalarQ":
        return ScalarQ.of(other) / self

    def __neg__(self) -> "ScalarQ":
        return ScalarQ(-self.value)

    def __pow__(self, power: int) -> "ScalarQ":
        if power < 0 and self.is_zero():
            raise ZeroDivisionScalarError("Negative power of zero")
        return ScalarQ(self.value**power)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ScalarQ | FracElement | int | Fraction):
            return bool(self.value == to_field(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def specialize(self, value: Rational) -> Fraction:
        return specialize_field(self.value, value)

    def to_text(self) -> str:
        return str(self.value)

    def __str__(self) -> str:
        return self.to_text()


def scalar_arith(a: ScalarQ, b: ScalarQ, op: str) -> ScalarQ:
    """Exact field arithmetic dispatched by operation name."""
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
        case "div":
            return a / b
    raise ValueError(f"Unknown scalar operation: {op}")


def specialize_q(a: ScalarQ, value: Rational) -> Fraction:
    """Evaluate ``a`` at ``q = value``."""
    return a.specialize(value)


@lru_cache(maxsize=64)
def coefficient_ring(variables: tuple[str, ...]) -> PolyRing:
    """Polynomial ring over Q(s) in the given variables, graded lexicographic."""
    if not variables:
        raise ValueError("A coefficient ring needs at least one variable")
    return PolyRing(variables, K, grlex)


@lru_cache(maxsize=64)
def classical_ring(variables: tuple[str, ...]) -> PolyRing:
    """Polynomial ring over Q in the given variables (q specialized)."""
    return PolyRing(variables, QQ, grlex)


def ring_variables(ring: PolyRing) -> tuple[str, ...]:
    return tuple(str(symbol) for symbol in ring.symbols)


def specialize_poly(poly: PolyElement, value: Rational = 1) -> PolyElement:
    """Specialize every Q(s) coefficient of ``poly`` at ``q = value``."""
    target = classical_ring(ring_variables(poly.ring))
    return target.from_dict(
        {
            monom: QQ(f.numerator, f.denominator)
            for monom, coeff in poly.terms()
            if (f := specialize_field(coeff, value))
        }
    )


def differentiate_poly_at_classical_point(poly: PolyElement) -> PolyElement:
    """Apply ``∂_γ|_{γ=0}`` (divided by i) coefficientwise."""
    target = classical_ring(ring_variables(poly.ring))
    return target.from_dict(
        {
            monom: QQ(f.numerator, f.denominator)
            for monom, coeff in poly.terms()
            if (f := derivative_at_classical_point(coeff))
        }
    )


@dataclass(frozen=True)
class CPoly:
    """Sparse commutative polynomial over Q(s) with a fixed variable list."""

    poly: PolyElement

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> "CPoly":
        return cls(coefficient_ring(variables).zero)

    @classmethod
    def constant(cls, variables: tuple[str, ...], value: ScalarLike) -> "CPoly":
        return cls(coefficient_ring(variables).ground_new(to_field(value)))

    @classmethod
    def variable(cls, variables: tuple[str, ...], name: str) -> "CPoly":
        ring = coefficient_ring(variables)
        return cls(ring.gens[variables.index(name)])

    @property
    def variables(self) -> tuple[str, ...]:
        return ring_variables(self.poly.ring)

    def _check(self, other: "CPoly") -> None:
        if self.poly.ring != other.poly.ring:
            raise VariableMismatchError(self.variables, other.variables)

    def _lift(self, other: "CPoly | ScalarLike") -> PolyElement:
        if isinstance(other, CPoly):
            self._check(other)
            return other.poly
        return self.poly.ring.ground_new(to_field(other))

    def __add__(self, other: "CPoly | ScalarLike") -> "CPoly":
        return CPoly(self.poly + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other: "CPoly | ScalarLike") -> "CPoly":
        return CPoly(self.poly - self._lift(other))

    def __mul__(self, other: "CPoly | ScalarLike") -> "CPoly":
        return CPoly(self.poly * self._lift(other))

    __rmul__ = __mul__

    def __neg__(self) -> "CPoly":
        return CPoly(-self.poly)

    def __pow__(self, power: int) -> "CPoly":
        return CPoly(self.poly**power)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CPoly):
            return self.poly.ring == other.poly.ring and self.poly == other.poly
        if isinstance(other, ScalarQ | FracElement | int | Fraction):
            return bool(self.poly == self.poly.ring.ground_new(to_field(other)))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, tuple(sorted(self.poly.terms()))))

    def is_zero(self) -> bool:
        return not self.poly

    def terms(self) -> list[tuple[tuple[int, ...], ScalarQ]]:
        return [(monom, ScalarQ(coeff)) for monom, coeff in self.poly.terms()]

    def specialize(self, value: Rational = 1) -> PolyElement:
        return specialize_poly(self.poly, value)

    def to_text(self) -> str:
        return str(self.poly)

    def __str__(self) -> str:
        return self.to_text()
