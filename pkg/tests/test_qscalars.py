"""Tests for exact scalars over Q(q^{1/2})."""

from fractions import Fraction

import pytest

from spectral_reduction.algebra.qscalars import (
    Q,
    Q_INV,
    CPoly,
    ScalarQ,
    derivative_at_classical_point,
    scalar_arith,
    specialize_field,
)
from spectral_reduction.exceptions import (
    SingularSpecializationError,
    VariableMismatchError,
    ZeroDivisionScalarError,
)


class TestScalarQ:
    """Tests for ScalarQ arithmetic."""

    def test_q_times_inverse(self):
        """q * q^-1 is one."""
        assert ScalarQ.q() * ScalarQ.q(-1) == 1

    def test_half_powers_square_to_q(self):
        """(q^{1/2})^2 equals q."""
        assert ScalarQ.q_half() ** 2 == ScalarQ.q()

    def test_division_by_zero(self):
        """Dividing by zero raises a scalar error."""
        with pytest.raises(ZeroDivisionScalarError):
            ScalarQ.of(1) / ScalarQ.of(0)

    def test_negative_power_of_zero(self):
        """Negative powers of zero are rejected."""
        with pytest.raises(ZeroDivisionScalarError):
            ScalarQ.of(0) ** -1

    def test_scalar_arith_dispatch(self):
        """scalar_arith routes by operation name."""
        a, b = ScalarQ.of(3), ScalarQ.of(Fraction(1, 2))
        assert scalar_arith(a, b, "add") == Fraction(7, 2)
        assert scalar_arith(a, b, "div") == 6
        with pytest.raises(ValueError):
            scalar_arith(a, b, "pow")


class TestSpecialization:
    """Tests for evaluation at q = value."""

    def test_q_minus_q_inverse_vanishes_at_one(self):
        """q - q^-1 is zero at q = 1."""
        assert (ScalarQ.q() - ScalarQ.q(-1)).specialize(1) == 0

    def test_half_power_at_square(self):
        """q^{1/2} at q = 4 is 2."""
        assert ScalarQ.q_half().specialize(4) == 2

    def test_half_power_needs_square(self):
        """q^{1/2} at q = 2 is not rational."""
        with pytest.raises(ValueError):
            ScalarQ.q_half().specialize(2)

    def test_singular_denominator(self):
        """1 / (q - 1) cannot be evaluated at q = 1."""
        with pytest.raises(SingularSpecializationError):
            (1 / (ScalarQ.q() - 1)).specialize(1)

    def test_specialize_field_rational(self):
        """(q + 1) / q at q = 2 is 3/2."""
        assert specialize_field((Q + 1) / Q, 2) == Fraction(3, 2)

    def test_derivative_of_q(self):
        """d/dgamma e^{i gamma} at 0 is i, d/dgamma e^{-i gamma} is -i."""
        assert derivative_at_classical_point(Q) == 1
        assert derivative_at_classical_point(Q_INV) == -1


class TestCPoly:
    """Tests for commutative polynomials over Q(s)."""

    def test_variable_mismatch(self):
        """Adding polynomials over different variable lists fails."""
        z = CPoly.variable(("z",), "z")
        w = CPoly.variable(("w",), "w")
        with pytest.raises(VariableMismatchError):
            z + w

    def test_specialize(self):
        """(q z - z) vanishes at q = 1."""
        z = CPoly.variable(("z",), "z")
        assert (z * ScalarQ.q() - z).specialize(1) == 0
