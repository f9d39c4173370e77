"""Tests for the spectral curve, divisors and separated-variable operators."""

import cmath
import random
from fractions import Fraction
from itertools import combinations, permutations
from math import pi

import pytest
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from spectral_reduction.classical.lax import NumericLax, sample_lax
from spectral_reduction.exceptions import (
    BranchPointError,
    GeometryError,
    KernelBudgetError,
    RepeatedPointError,
)
from spectral_reduction.geometry.curve import (
    CurveData,
    DivisorPoint,
    curve_from_lax,
    divisor_determinant,
    genus,
    holomorphic_differential,
    index_map,
    rational_divisor,
    read_points_file,
)
from spectral_reduction.geometry.operators import measure_kernel_apply, separated_variable_ops


def G(zeta):
    return cmath.exp(0.3 * zeta[0] - 0.1j * zeta[-1]) + zeta[0] ** 2


@pytest.fixture
def hyperelliptic():
    """w^2 - z with the N=2, n=3 index table."""
    return CurveData(
        N=2,
        n=3,
        t=((Fraction(1),), (Fraction(0),) * 4, (Fraction(0), Fraction(-1)) + (Fraction(0),) * 5),
        index_table=tuple(index_map(2, 3)),
    )


def _curve_with_table(table):
    return CurveData(N=2, n=1, t=((Fraction(1),), (Fraction(0),) * 2, (Fraction(0),) * 3), index_table=table)


def _sign(perm):
    inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def _matrix(entries):
    rows = [[QQ(0)] * 3 for _ in range(3)]
    for (i, j), value in entries.items():
        rows[i][j] = QQ(value)
    return DomainMatrix(rows, (3, 3), QQ)


@pytest.fixture
def triangular_32():
    """N=3, n=2 with diagonal 1 + z, 2z, z^2, one lower entry and two upper ones."""
    l0 = _matrix({(0, 0): 1, (0, 1): 7})
    l1 = _matrix({(0, 0): 1, (1, 1): 2, (1, 2): 5, (2, 0): 3})
    l2 = _matrix({(2, 2): 1})
    return NumericLax(3, 2, "exact", (l0, l1, l2))


class TestIndexMap:
    """Tests for genus and the (k, l) table."""

    def test_genus(self):
        """g = (N-1)(Nn-2)/2."""
        assert genus(2, 3) == 2
        assert genus(3, 2) == 4
        assert genus(2, 1) == 0

    def test_small_tables(self):
        """N=2, n=3 uses the first block only; genus zero has no entries."""
        assert index_map(2, 3) == [(1, 1), (1, 2)]
        assert index_map(2, 1) == []

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_table_size_and_range(self, N, n):
        """One entry per differential with 1 <= k <= N-1 and l >= 1."""
        table = index_map(N, n)
        assert len(table) == genus(N, n)
        assert all(1 <= k <= N - 1 and l >= 1 for k, l in table)


class TestCurve:
    """Tests for curve expansion and differentials."""

    def test_curve_from_diagonal_lax(self):
        """det(wI + diag(1, 2) + z diag(0, 3)) = w^2 + (3 + 3z) w + 2 + 3z."""
        l0 = DomainMatrix([[QQ(1), QQ(0)], [QQ(0), QQ(2)]], (2, 2), QQ)
        l1 = DomainMatrix([[QQ(0), QQ(0)], [QQ(0), QQ(3)]], (2, 2), QQ)
        curve = curve_from_lax(NumericLax(2, 1, "exact", (l0, l1)))
        assert curve.t[0] == (1,)
        assert curve.t[1] == (3, 3)
        assert curve.t[2] == (2, 3, 0)
        assert curve.genus == 0

    def test_point_on_curve(self, hyperelliptic):
        """(4, 2) lies on w^2 = z."""
        point = DivisorPoint.on(hyperelliptic, Fraction(4), Fraction(2))
        assert point.residual == 0

    def test_holomorphic_differentials(self, hyperelliptic):
        """f_i / (2w) at (4, 2)."""
        point = DivisorPoint(Fraction(4), Fraction(2))
        assert holomorphic_differential(hyperelliptic, 1, point) == Fraction(1, 4)
        assert holomorphic_differential(hyperelliptic, 2, point) == 1

    def test_branch_point(self, hyperelliptic):
        """d_w r vanishes at the origin."""
        with pytest.raises(BranchPointError):
            holomorphic_differential(hyperelliptic, 1, DivisorPoint(Fraction(0), Fraction(0)))

    def test_sheets_over(self, hyperelliptic):
        """Two sheets over z = 4."""
        sheets = sorted(hyperelliptic.sheets_over(4), key=lambda w: w.real)
        assert sheets[0] == pytest.approx(-2)
        assert sheets[1] == pytest.approx(2)


class TestDivisorDeterminant:
    """Tests for det(f_i(z_j, w_j))."""

    def test_exact_value(self, hyperelliptic):
        """With f = (1, z) the determinant is z_2 - z_1."""
        p1 = DivisorPoint(Fraction(4), Fraction(2))
        p2 = DivisorPoint(Fraction(9), Fraction(3))
        assert divisor_determinant(hyperelliptic, [p1, p2]) == 5
        assert divisor_determinant(hyperelliptic, [p2, p1]) == -5

    def test_complex_value(self, hyperelliptic):
        """Complex points use the float determinant."""
        p1 = DivisorPoint(complex(4), complex(2))
        p2 = DivisorPoint(complex(9), complex(3))
        assert divisor_determinant(hyperelliptic, [p1, p2]) == pytest.approx(5)

    def test_repeated_point(self, hyperelliptic):
        """Coinciding points are rejected."""
        p = DivisorPoint(Fraction(4), Fraction(2))
        with pytest.raises(RepeatedPointError):
            divisor_determinant(hyperelliptic, [p, p])

    def test_wrong_count(self, hyperelliptic):
        """Exactly g points are required."""
        with pytest.raises(GeometryError):
            divisor_determinant(hyperelliptic, [DivisorPoint(Fraction(4), Fraction(2))])

    def test_rational_divisor_on_sampled_curve(self):
        """Points over z = 2..5 lie exactly on the lower-triangular curve of a sample."""
        lax = sample_lax(3, 2, random.Random(7))
        curve, points = rational_divisor(lax, 4)
        assert curve.genus == 4
        assert [p.z for p in points] == [2, 3, 4, 5]
        assert all(isinstance(p.w, Fraction) and curve.r(p.w, p.z) == 0 for p in points)

    def test_rational_divisor_needs_exact_lax(self):
        """Float samples are refused."""
        with pytest.raises(GeometryError):
            rational_divisor(sample_lax(3, 2, random.Random(7), backend="float"), 4)

    def test_alternation_under_permutations(self, triangular_32):
        """det(f_i(z_p(j), w_p(j))) = sign(p) det for every p at g = 4."""
        curve, points = rational_divisor(triangular_32, 4)
        # sheets 1 + z, 2z, z^2 with z = 2, 3, 4 and then back to the first sheet at z = 5
        assert [p.w for p in points] == [-3, -6, -16, -6]
        det = divisor_determinant(curve, points)
        assert det == 504
        for perm in permutations(range(4)):
            permuted = divisor_determinant(curve, [points[k] for k in perm])
            assert permuted == _sign(perm) * det

    def test_alternation_random_permutation(self):
        """A shuffled divisor on a sampled g = 4 curve changes det by the sign only."""
        rng = random.Random(11)
        curve, points = rational_divisor(sample_lax(3, 2, rng), 4)
        perm = list(range(4))
        rng.shuffle(perm)
        det = divisor_determinant(curve, points)
        assert divisor_determinant(curve, [points[k] for k in perm]) == _sign(perm) * det


class TestOperators:
    """Tests for the separated-variable operators."""

    def test_w_z_exchange(self):
        """w z = q^2 z w."""
        ops = separated_variable_ops(0.7, 1)
        zeta = (0.2 + 0.1j,)
        left = (ops.w(0) @ ops.z(0))(G)(zeta)
        right = (ops.z(0) @ ops.w(0))(G)(zeta)
        assert left == pytest.approx(ops.q**2 * right)

    def test_dual_pair_commutes(self):
        """Z commutes with w and W commutes with z."""
        ops = separated_variable_ops(0.7, 1)
        zeta = (0.2 + 0.1j,)
        assert (ops.Z(0) @ ops.w(0))(G)(zeta) == pytest.approx((ops.w(0) @ ops.Z(0))(G)(zeta))
        assert (ops.W(0) @ ops.z(0))(G)(zeta) == pytest.approx((ops.z(0) @ ops.W(0))(G)(zeta))

    def test_power_shifts_twice(self):
        """w^2 shifts by 2 i gamma."""
        ops = separated_variable_ops(0.5, 1)
        zeta = (0.3 + 0j,)
        assert (ops.w(0) ** 2)(G)(zeta) == pytest.approx(G((0.3 + 1.0j,)))

    def test_zero_gamma(self):
        """gamma = 0 is rejected."""
        with pytest.raises(GeometryError):
            separated_variable_ops(0.0, 1)


class TestMeasureKernel:
    """Tests for det(f_i(z_j, w_j)) det(f_i(Z_j, W_j)) applied to G."""

    def test_genus_one_is_identity(self):
        """With f_1 = 1 both determinants are the identity."""
        curve = _curve_with_table(((1, 1),))
        zeta = (0.4 + 0.2j,)
        assert measure_kernel_apply(curve, 0.3, G, [zeta])[0] == pytest.approx(G(zeta))

    def test_genus_two(self, hyperelliptic):
        """f = (1, z) gives (e^{2 zeta_2} - e^{2 zeta_1})(e^{2 pi zeta_2/gamma} - e^{2 pi zeta_1/gamma}) G."""
        gamma = 0.9
        zeta = (0.1 + 0.05j, 0.2 - 0.1j)
        expected = (
            (cmath.exp(2 * zeta[1]) - cmath.exp(2 * zeta[0]))
            * (cmath.exp(2 * pi * zeta[1] / gamma) - cmath.exp(2 * pi * zeta[0] / gamma))
            * G(zeta)
        )
        assert measure_kernel_apply(hyperelliptic, gamma, G, [zeta])[0] == pytest.approx(expected)

    def test_budget(self):
        """More than three differentials are refused."""
        curve = _curve_with_table(((1, 1), (1, 2), (1, 3), (1, 4)))
        with pytest.raises(KernelBudgetError):
            measure_kernel_apply(curve, 0.3, G, [(0j,) * 4])

    def test_zero_gamma(self):
        """gamma = 0 is rejected before sampling."""
        with pytest.raises(GeometryError):
            measure_kernel_apply(_curve_with_table(((1, 1),)), 0.0, G, [(0j,)])


class TestPointsFile:
    """Tests for the divisor points file."""

    def test_read_with_comments(self, tmp_path):
        """Comments and blank lines are skipped."""
        path = tmp_path / "points.txt"
        path.write_text("# z w\n1 0 2 0\n\n3 1 -1 0.5  # second\n")
        points = read_points_file(path)
        assert [p.z for p in points] == [1 + 0j, 3 + 1j]
        assert points[1].w == -1 + 0.5j

    def test_malformed_line(self, tmp_path):
        """Lines without four numbers are rejected."""
        path = tmp_path / "points.txt"
        path.write_text("1 2 3\n")
        with pytest.raises(GeometryError):
            read_points_file(path)
