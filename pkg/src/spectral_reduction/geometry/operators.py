"""Separated variables as operators on functions G(zeta_1, ..., zeta_g).

z_j multiplies by e^{2 zeta_j} and w_j shifts zeta_j by i gamma, so that
w_j z_j = q^2 z_j w_j with q = e^{i gamma}. The dual pair Z_j = e^{2 pi zeta_j / gamma},
W_j = shift by i pi commutes with both z and w.
"""

import cmath
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import permutations
from math import pi

from spectral_reduction.exceptions import GeometryError, KernelBudgetError
from spectral_reduction.geometry.curve import CurveData
from spectral_reduction.logging import get_logger

logger = get_logger(__name__)

Zeta = tuple[complex, ...]
Function = Callable[[Zeta], complex]

MAX_KERNEL_GENUS = 3


@dataclass(frozen=True)
class Operator:
    """Lazy linear operator on sampled functions; ``A @ B`` applies B first."""

    apply: Callable[[Function], Function]

    def __call__(self, G: Function) -> Function:
        return self.apply(G)

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(lambda G: self.apply(other.apply(G)))

    def __add__(self, other: "Operator") -> "Operator":
        def apply(G: Function) -> Function:
            left, right = self.apply(G), other.apply(G)
            return lambda zeta: left(zeta) + right(zeta)

        return Operator(apply)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + other.scale(-1)

    def scale(self, factor: complex) -> "Operator":
        def apply(G: Function) -> Function:
            inner = self.apply(G)
            return lambda zeta: factor * inner(zeta)

        return Operator(apply)

    def __pow__(self, power: int) -> "Operator":
        result = IDENTITY
        for _ in range(power):
            result = self @ result
        return result


IDENTITY = Operator(lambda G: G)


def multiplier(fn: Callable[[Zeta], complex]) -> Operator:
    return Operator(lambda G: lambda zeta: fn(zeta) * G(zeta))


def shift(j: int, amount: complex) -> Operator:
    def apply(G: Function) -> Function:
        def shifted(zeta: Zeta) -> complex:
            moved = list(zeta)
            moved[j] += amount
            return G(tuple(moved))

        return shifted

    return Operator(apply)


@dataclass(frozen=True)
class SeparatedVariables:
    """Operator factory for z_j, w_j and the dual Z_j, W_j (0-based j)."""

    gamma: float
    size: int

    def __post_init__(self) -> None:
        if self.gamma == 0:
            raise GeometryError("gamma must be nonzero")

    @property
    def q(self) -> complex:
        return cmath.exp(1j * self.gamma)

    def z(self, j: int) -> Operator:
        return multiplier(lambda zeta: cmath.exp(2 * zeta[j]))

    def w(self, j: int) -> Operator:
        return shift(j, 1j * self.gamma)

    def Z(self, j: int) -> Operator:
        return multiplier(lambda zeta: cmath.exp(2 * pi * zeta[j] / self.gamma))

    def W(self, j: int) -> Operator:
        return shift(j, 1j * pi)


def separated_variable_ops(gamma: float, g: int) -> SeparatedVariables:
    return SeparatedVariables(gamma, g)


def _sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inversions % 2 else 1


def operator_determinant(
    table: Sequence[tuple[int, int]], mult: Callable[[int], Operator], shift_op: Callable[[int], Operator]
) -> Operator:
    """sum_sigma sign(sigma) prod_j f_{sigma(j)}(z_j, w_j) with each entry z^{l-1} w^{k-1}.

    Shift powers act on G first, multipliers after; distinct j commute.
    """
    total: Operator | None = None
    g = len(table)
    for perm in permutations(range(g)):
        term = IDENTITY
        for j, i in enumerate(perm):
            k, l = table[i]
            term = (mult(j) ** (l - 1)) @ (shift_op(j) ** (k - 1)) @ term
        term = term.scale(_sign(perm))
        total = term if total is None else total + term
    return total if total is not None else IDENTITY


def measure_kernel_apply(
    curve: CurveData, gamma: float, G: Function, points: Sequence[Zeta]
) -> list[complex]:
    """Apply det(f_i(z_j, w_j)) det(f_i(Z_j, W_j)) to G and sample on ``points``.

    Raises:
        KernelBudgetError: If the genus exceeds the desk-scale bound.
    """
    g = curve.genus
    if g > MAX_KERNEL_GENUS:
        raise KernelBudgetError(f"Kernel needs g <= {MAX_KERNEL_GENUS}, got {g}")
    ops = separated_variable_ops(gamma, g)
    table = curve.index_table
    direct = operator_determinant(table, ops.z, ops.w)
    dual = operator_determinant(table, ops.Z, ops.W)
    result = (direct @ dual)(G)
    return [result(tuple(complex(x) for x in zeta)) for zeta in points]


def quasiclassical_trend(
    curve: CurveData, G: Function, zeta: Zeta, gammas: Sequence[float]
) -> list[tuple[float, complex]]:
    """Ratio of the kernel to det(f_i(z_j, w_j))^2 applied to G, per gamma.

    Recorded as a trend; no limit is asserted.
    """
    trend = []
    for gamma in gammas:
        ops = separated_variable_ops(gamma, curve.genus)
        direct = operator_determinant(curve.index_table, ops.z, ops.w)
        kernel = measure_kernel_apply(curve, gamma, G, [zeta])[0]
        square = (direct @ direct)(G)(zeta)
        trend.append((gamma, kernel / square if square else complex("nan")))
    logger.debug(f"Quasiclassical trend: {trend}")
    return trend
