"""Exact scalars, commutative matrices and the R-matrix constructions."""

from spectral_reduction.algebra.matrices import CMatrix
from spectral_reduction.algebra.qscalars import K, Q, Q_INV, S_HALF, CPoly, ScalarQ
from spectral_reduction.algebra.rmatrix import (
    build_Y_Z_K_Rtilde,
    check_ybe,
    classical_r,
    constant_R,
    spectral_R,
)

__all__ = [
    "CMatrix",
    "CPoly",
    "K",
    "Q",
    "Q_INV",
    "S_HALF",
    "ScalarQ",
    "build_Y_Z_K_Rtilde",
    "check_ybe",
    "classical_r",
    "constant_R",
    "spectral_R",
]
