"""Classical r-matrix brackets, invariants and the reduction of l(z)."""

from spectral_reduction.classical.brackets import ClassicalModel, build_bracket_table, poisson_bracket
from spectral_reduction.classical.invariants import check_center, check_involution, dimension_report
from spectral_reduction.classical.lax import NumericLax, classical_reduce, sample_lax

__all__ = [
    "ClassicalModel",
    "NumericLax",
    "build_bracket_table",
    "check_center",
    "check_involution",
    "classical_reduce",
    "dimension_report",
    "poisson_bracket",
    "sample_lax",
]
