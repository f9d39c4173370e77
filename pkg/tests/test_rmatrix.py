"""Tests for R-matrices and the reduction matrices."""

from fractions import Fraction

import pytest

from spectral_reduction.algebra import rmatrix
from spectral_reduction.algebra.matrices import CMatrix
from spectral_reduction.algebra.rmatrix import (
    build_C12,
    build_V,
    build_Y_Z_K_Rtilde,
    check_ybe,
    classical_limit_check,
    coinciding_point_degeneration,
    constant_R,
    hecke_identity,
    invert_constant,
    permutation_matrix,
    projector_holds,
    swap_legs,
    unit_matrix,
    unitarity_holds,
)
from spectral_reduction.exceptions import (
    IndexOutOfRangeError,
    InverseMismatchError,
    MatrixError,
    ModelError,
)


class TestConstantR:
    """Tests for the constant R-matrix."""

    @pytest.mark.parametrize("N", [2, 3])
    def test_hecke_identity(self, N):
        """R12 - R21^{-1} = (q - q^{-1}) P."""
        assert hecke_identity(N)

    def test_inverse(self):
        """invert_constant gives a two-sided inverse."""
        R = constant_R(2)
        identity = CMatrix.identity(2, R.ring, "tensor2")
        assert (R @ invert_constant(R)).equals(identity)

    def test_permutation_squares_to_identity(self):
        """P^2 = I."""
        P = permutation_matrix(3)
        assert (P @ P).equals(CMatrix.identity(3, P.ring, "tensor2"))

    def test_requires_size_two(self):
        """N = 1 is rejected."""
        with pytest.raises(ModelError):
            constant_R(1)

    def test_swap_legs_needs_tensor(self):
        """Leg swap of a single-space matrix fails."""
        with pytest.raises(MatrixError):
            swap_legs(unit_matrix(2, 1, 1))

    def test_unit_matrix_bounds(self):
        """Matrix units outside 1..N are rejected."""
        with pytest.raises(IndexOutOfRangeError):
            unit_matrix(2, 3, 1)


class TestSpectralR:
    """Tests for R(z, z')."""

    def test_ybe_n2(self):
        """Yang-Baxter holds exactly for N = 2."""
        assert check_ybe(2).passed

    @pytest.mark.slow
    @pytest.mark.parametrize("N", [3, 4])
    def test_ybe_larger(self, N):
        """Yang-Baxter holds exactly for N = 3, 4."""
        assert check_ybe(N).passed

    def test_coinciding_points(self):
        """R(z, z) = z (q - q^{-1}) P."""
        assert coinciding_point_degeneration(2)

    def test_unitarity(self):
        """R(z, z') R21(z', z) is scalar."""
        assert unitarity_holds(2)

    def test_classical_limit(self):
        """d/dgamma R at gamma = 0 is 2i times the classical r numerator."""
        report = classical_limit_check(2)
        assert report.passed
        assert report.c_over_i == Fraction(2)


class TestReductionMatrices:
    """Tests for V, C12, Y12 and friends."""

    def test_v_nilpotent(self):
        """V^{N-1} = 0 for N = 3."""
        V = build_V(3)
        assert (V @ V).is_zero()

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_projector(self, N):
        """C12 (I - P) is idempotent."""
        assert projector_holds(N)

    def test_extra_terms_do_not_change_c12(self):
        """Powers of V past the nilpotency bound vanish."""
        assert build_C12(3).equals(build_C12(3, extra_terms=2))

    @pytest.mark.parametrize("N", [2, 3])
    def test_closed_inverse(self, N):
        """Y12 times the closed inverse formula is the identity."""
        mats = build_Y_Z_K_Rtilde(N)
        identity = CMatrix.identity(N, mats.Y12.ring, "tensor2")
        assert (mats.Y12 @ mats.Y12_inv).equals(identity)

    @pytest.mark.parametrize("N", [2, 3])
    def test_closed_inverse_matches_exact_inverse(self, N):
        """The closed formula agrees entrywise with the exact inverse of Y12."""
        mats = build_Y_Z_K_Rtilde(N)
        assert mats.Y12_inv.equals(invert_constant(mats.Y12))

    def test_inverse_mismatch_raises(self, monkeypatch):
        """A disagreeing exact inverse is reported."""
        monkeypatch.setattr(rmatrix, "invert_constant", lambda X: X)
        with pytest.raises(InverseMismatchError):
            build_Y_Z_K_Rtilde(2)
