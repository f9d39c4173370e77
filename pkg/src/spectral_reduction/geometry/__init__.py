"""Spectral curve, divisors and separated-variable operators."""

from spectral_reduction.geometry.curve import (
    CurveData,
    DivisorPoint,
    curve_from_lax,
    divisor_determinant,
    holomorphic_differential,
    index_map,
)
from spectral_reduction.geometry.operators import measure_kernel_apply, separated_variable_ops

__all__ = [
    "CurveData",
    "DivisorPoint",
    "curve_from_lax",
    "divisor_determinant",
    "holomorphic_differential",
    "index_map",
    "measure_kernel_apply",
    "separated_variable_ops",
]
