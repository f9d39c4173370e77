"""Tests for the classical bracket table, invariants and the reduction of l(z)."""

import random
from fractions import Fraction

import pytest
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from spectral_reduction.classical.brackets import (
    antisymmetry_violations,
    build_bracket_table,
    jacobi_violations,
    replay_identity,
    shape_positions,
)
from spectral_reduction.classical.bridge import check_classical_limit_bridge
from spectral_reduction.classical.invariants import check_center, check_involution, dimension_report
from spectral_reduction.classical.lax import NumericLax, classical_reduce, sample_lax
from spectral_reduction.exceptions import ModelError, SingularSimilarityError


@pytest.fixture(scope="module")
def table_21():
    """Bracket table for N=2, n=1."""
    return build_bracket_table(2, 1)


class TestBracketTable:
    """Tests for the r-matrix bracket."""

    def test_antisymmetry(self, table_21):
        """{x, y} = -{y, x} on generators."""
        assert antisymmetry_violations(table_21) == []

    def test_jacobi(self, table_21):
        """Jacobi holds on every generator triple."""
        assert jacobi_violations(table_21) == []

    def test_replay(self, table_21):
        """The table reproduces the defining identity."""
        assert replay_identity(table_21)

    def test_shape_count(self):
        """The classical shape has nN^2 + N positions, one fewer when degenerate."""
        assert len(shape_positions(3, 2)) == 2 * 9 + 3
        assert len(shape_positions(3, 2, degenerate=True)) == 2 * 9 + 2

    def test_invalid_shape(self):
        """N < 2 is rejected."""
        with pytest.raises(ModelError):
            shape_positions(1, 1)


class TestInvariants:
    """Tests for involution, center and dimension counting."""

    def test_involution(self, table_21):
        """Characteristic coefficients Poisson commute."""
        report = check_involution(table_21)
        assert report.passed, report.failures

    def test_center(self, table_21):
        """Central coefficients bracket to zero with all generators."""
        report = check_center(table_21)
        assert report.passed, report.failures
        assert report.pairs_checked > 0

    @pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_dimension_identities(self, N, n):
        """dim M = generators - center = 2g + 2(N-1) = 2 * integrals."""
        assert dimension_report(N, n).identities_hold

    def test_genus_n2_n3(self):
        """N=2, n=3 has genus 2."""
        assert dimension_report(2, 3).genus == 2


class TestClassicalReduce:
    """Tests for the similarity s l(z) s^{-1}."""

    @pytest.mark.parametrize("N,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_block_structure_exact(self, N, n):
        """Samples on the reduction surface have the reduced block degrees."""
        ran = 0
        for seed in range(5):
            lax = sample_lax(N, n, random.Random(seed))
            try:
                result = classical_reduce(lax)
            except SingularSimilarityError:
                continue
            ran += 1
            assert result.passed, result.checks
        assert ran > 0

    def test_block_structure_float(self):
        """The float backend agrees within tolerance."""
        lax = sample_lax(2, 1, random.Random(1), backend="float")
        try:
            result = classical_reduce(lax)
        except SingularSimilarityError:
            pytest.skip("singular sample")
        assert result.passed, result.checks

    def test_forbidden_entry(self):
        """l^(0)_21 is outside the classical shape."""
        zero = DomainMatrix([[QQ(0), QQ(0)], [QQ(0), QQ(0)]], (2, 2), QQ)
        bad = DomainMatrix([[QQ(0), QQ(0)], [QQ(1), QQ(0)]], (2, 2), QQ)
        with pytest.raises(ModelError):
            NumericLax(2, 1, "exact", (bad, zero))

    def test_wrong_coefficient_count(self):
        """n + 1 coefficient matrices are required."""
        zero = DomainMatrix([[QQ(0), QQ(0)], [QQ(0), QQ(0)]], (2, 2), QQ)
        with pytest.raises(ModelError):
            NumericLax(2, 2, "exact", (zero, zero))

    def test_evaluate(self):
        """l(z) = l0 + z l1."""
        l0 = DomainMatrix([[QQ(1), QQ(2)], [QQ(0), QQ(3)]], (2, 2), QQ)
        l1 = DomainMatrix([[QQ(0), QQ(0)], [QQ(4), QQ(5)]], (2, 2), QQ)
        lax = NumericLax(2, 1, "exact", (l0, l1))
        value = lax.at(Fraction(2))
        assert value[1, 0].element == QQ(8)
        assert value[1, 1].element == QQ(13)


class TestBridge:
    """Tests for the first-order link between the RTT and bracket relations."""

    def test_bridge_report_consistent(self):
        """A fitted constant exists exactly when relations were compared."""
        report = check_classical_limit_bridge(2, 1)
        assert (report.kappa is None) == (report.relations_checked == 0)
