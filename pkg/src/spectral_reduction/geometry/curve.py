"""Spectral curve det(wI + l(z)) = 0, its holomorphic differentials and divisors."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from spectral_reduction.algebra.qscalars import classical_ring
from spectral_reduction.classical.lax import NumericLax
from spectral_reduction.config import get_settings
from spectral_reduction.exceptions import BranchPointError, GeometryError, RepeatedPointError
from spectral_reduction.logging import get_logger

logger = get_logger(__name__)

Number = complex | Fraction


def genus(N: int, n: int) -> int:
    return (N - 1) * (N * n - 2) // 2


def _block_start(k: int, n: int) -> int:
    return (k - 1) * (k * n - 2) // 2


def index_map(N: int, n: int) -> list[tuple[int, int]]:
    """(k, l) for i = 1..g with (k-1)(kn-2)/2 < i <= k((k+1)n-2)/2 and l = i - (k-1)(kn-2)/2."""
    table = []
    for i in range(1, genus(N, n) + 1):
        for k in range(1, N):
            if _block_start(k, n) < i <= _block_start(k + 1, n):
                table.append((k, i - _block_start(k, n)))
                break
        else:
            raise GeometryError(f"No block contains i={i} for N={N}, n={n}")
    return table


def f_value(k: int, l: int, z: Number, w: Number) -> Number:
    """f_i(z, w) = w^{k-1} z^{l-1}."""
    return w ** (k - 1) * z ** (l - 1)


@dataclass(frozen=True)
class CurveData:
    """r(w, z) = sum_k w^{N-k} t_k(z) with t[k][p] the coefficient of z^p."""

    N: int
    n: int
    t: tuple[tuple[Fraction, ...], ...]
    index_table: tuple[tuple[int, int], ...]

    @property
    def genus(self) -> int:
        return len(self.index_table)

    def t_at(self, k: int, z: Number) -> Number:
        return sum((c * z**p for p, c in enumerate(self.t[k])), Fraction(0))

    def r(self, w: Number, z: Number) -> Number:
        return sum((w ** (self.N - k) * self.t_at(k, z) for k in range(self.N + 1)), Fraction(0))

    def dr_dw(self, w: Number, z: Number) -> Number:
        return sum(
            ((self.N - k) * w ** (self.N - k - 1) * self.t_at(k, z) for k in range(self.N)),
            Fraction(0),
        )

    def sheets_over(self, z: complex) -> list[complex]:
        """Roots w of r(w, z) = 0."""
        coefficients = [complex(self.t_at(k, z)) for k in range(self.N + 1)]
        return [complex(w) for w in np.roots(coefficients)]


def curve_from_lax(lax: NumericLax) -> CurveData:
    """Expand det(wI + l(z)) into sum_k w^{N-k} t_k(z).

    Raises:
        GeometryError: If some t_k has degree above kn.
    """
    N, n = lax.N, lax.n
    ring = classical_ring(("w", "z"))
    w, z = ring.gens
    rows = [[ring.zero] * N for _ in range(N)]
    for a, C in enumerate(lax.coeffs):
        for i in range(N):
            for j in range(N):
                value = C[i, j].element if lax.backend == "exact" else Fraction(float(C[i, j]))
                value = Fraction(int(value.numerator), int(value.denominator))
                if value:
                    rows[i][j] += QQ(value.numerator, value.denominator) * z**a
    for i in range(N):
        rows[i][i] += w
    det = DomainMatrix(rows, (N, N), ring.to_domain()).det()
    t = [[Fraction(0)] * (k * n + 1) for k in range(N + 1)]
    for (w_power, z_power), coeff in det.terms():
        k = N - w_power
        if z_power > k * n:
            raise GeometryError(f"deg t_{k} exceeds {k * n}")
        t[k][z_power] = Fraction(int(coeff.numerator), int(coeff.denominator))
    curve = CurveData(N, n, tuple(tuple(row) for row in t), tuple(index_map(N, n)))
    logger.debug(f"Spectral curve N={N} n={n}, genus {curve.genus}")
    return curve


@dataclass(frozen=True)
class DivisorPoint:
    z: Number
    w: Number
    residual: float = 0.0

    @classmethod
    def on(cls, curve: CurveData, z: Number, w: Number) -> "DivisorPoint":
        return cls(z, w, abs(complex(curve.r(w, z))))


def _exact(value: object) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def rational_divisor(lax: NumericLax, count: int) -> tuple[CurveData, list[DivisorPoint]]:
    """Curve of the lower-triangular part of ``lax`` with ``count`` exact points on it.

    det(wI + l(z)) then factors into the sheets w = -l_ii(z), so point j lies
    over z = j + 2 on sheet j mod N with rational coordinates.

    Raises:
        GeometryError: If ``lax`` carries float coefficients.
    """
    if lax.backend != "exact":
        raise GeometryError("Rational divisors need an exact Lax sample")
    N = lax.N
    coeffs = tuple(
        DomainMatrix(
            [[C[i, j].element if j <= i else QQ(0) for j in range(N)] for i in range(N)], (N, N), QQ
        )
        for C in lax.coeffs
    )
    curve = curve_from_lax(NumericLax(N, lax.n, "exact", coeffs))
    points = []
    for j in range(count):
        z = Fraction(j + 2)
        i = j % N
        w = -sum((_exact(C[i, i].element) * z**a for a, C in enumerate(coeffs)), Fraction(0))
        points.append(DivisorPoint.on(curve, z, w))
    return curve, points


def holomorphic_differential(curve: CurveData, i: int, p: DivisorPoint) -> Number:
    """f_i(z, w) / d_w r(w, z) at ``p``.

    Raises:
        BranchPointError: If d_w r vanishes at ``p``.
    """
    k, l = curve.index_table[i - 1]
    derivative = curve.dr_dw(p.w, p.z)
    if abs(complex(derivative)) <= get_settings().float_tolerance:
        raise BranchPointError(f"d_w r vanishes at z={p.z}, w={p.w}")
    return f_value(k, l, p.z, p.w) / derivative


def divisor_determinant(curve: CurveData, points: list[DivisorPoint]) -> Number:
    """det(f_i(z_j, w_j)); exact when every coordinate is a Fraction.

    Raises:
        RepeatedPointError: If two points coincide.
    """
    g = curve.genus
    if len(points) != g:
        raise GeometryError(f"Need {g} points, got {len(points)}")
    for p, q in combinations(points, 2):
        if p.z == q.z and p.w == q.w:
            raise RepeatedPointError(
                "Coinciding divisor points: the determinant definition needs changes there"
            )
    if g == 0:
        return Fraction(1)
    entries = [[f_value(k, l, p.z, p.w) for p in points] for k, l in curve.index_table]
    if all(isinstance(p.z, Fraction) and isinstance(p.w, Fraction) for p in points):
        matrix = DomainMatrix(
            [[QQ(x.numerator, x.denominator) for x in row] for row in entries], (g, g), QQ
        )
        value = matrix.det()
        return Fraction(int(value.numerator), int(value.denominator))
    return complex(np.linalg.det(np.array(entries, dtype=complex)))


def read_points_file(path: str | Path) -> list[DivisorPoint]:
    """Parse ``re_z im_z re_w im_w`` lines; blank lines and ``#`` comments are skipped."""
    points = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        try:
            re_z, im_z, re_w, im_w = (float(x) for x in parts)
        except ValueError:
            raise GeometryError(f"{path}:{number}: expected four numbers, got {line!r}") from None
        points.append(DivisorPoint(complex(re_z, im_z), complex(re_w, im_w)))
    return points
