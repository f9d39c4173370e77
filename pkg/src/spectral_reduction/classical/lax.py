"""Numeric Lax matrices and the classical reduction m(z) = s l(z) s^{-1}."""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from spectral_reduction.classical.brackets import shape_positions
from spectral_reduction.config import get_settings
from spectral_reduction.exceptions import ModelError, SingularSimilarityError
from spectral_reduction.logging import get_logger

logger = get_logger(__name__)

Backend = Literal["exact", "float"]


@dataclass(frozen=True)
class NumericLax:
    """Coefficients l^{(0)}..l^{(n)} of l(z) at one point of phase space.

    Exact coefficients are DomainMatrix over QQ, float ones numpy arrays.
    """

    N: int
    n: int
    backend: Backend
    coeffs: tuple[Any, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n + 1:
            raise ModelError(f"Expected {self.n + 1} coefficient matrices, got {len(self.coeffs)}")
        allowed = set(shape_positions(self.N, self.n, "classical"))
        for a, C in enumerate(self.coeffs):
            for i in range(self.N):
                for j in range(self.N):
                    if (a, i + 1, j + 1) not in allowed and _entry(C, i, j, self.backend) != 0:
                        raise ModelError(f"l^({a})_{i + 1}{j + 1} must vanish for this shape")

    @property
    def mu(self) -> Any:
        return self.coeffs[self.n]

    @property
    def nu(self) -> Any:
        return self.coeffs[self.n - 1][0, :] if self.backend == "float" else self.coeffs[self.n - 1][0:1, :]

    def at(self, z: Fraction | float) -> Any:
        total = self.coeffs[0]
        for a in range(1, self.n + 1):
            total = total + _scale(self.coeffs[a], z**a, self.backend)
        return total


def _entry(C: Any, i: int, j: int, backend: Backend) -> Any:
    if backend == "float":
        return float(C[i, j])
    value = C[i, j].element
    return Fraction(int(value.numerator), int(value.denominator))


def _scale(C: Any, factor: Fraction | float, backend: Backend) -> Any:
    if backend == "float":
        return C * float(factor)
    return C * QQ(Fraction(factor).numerator, Fraction(factor).denominator)


def _from_rows(rows: list[list[Fraction]], backend: Backend) -> Any:
    if backend == "float":
        return np.array([[float(x) for x in row] for row in rows], dtype=float)
    N = len(rows)
    return DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in rows], (N, N), QQ)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def characteristic_shift(mu_rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """p(mu) = prod_{j=2}^N (mu - mu_jj I) for a lower-triangular mu."""
    N = len(mu_rows)
    result = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    for jj in range(1, N):
        shifted = [[mu_rows[i][k] - (mu_rows[jj][jj] if i == k else 0) for k in range(N)] for i in range(N)]
        result = [[sum((result[i][m] * shifted[m][k] for m in range(N)), Fraction(0)) for k in range(N)] for i in range(N)]
    return result


def sample_lax(
    N: int,
    n: int,
    rng: random.Random | None = None,
    backend: Backend = "exact",
    on_reduction_surface: bool = True,
) -> NumericLax:
    """Random l(z) of the classical shape with l^{(n)}_{11} = 0.

    With ``on_reduction_surface`` the entry nu_1 = l^{(n-1)}_{11} is solved so
    that the first component of nu p(mu) vanishes, where p is the
    characteristic factor without the mu_11 root; then s mu = U s exactly.
    """
    rng = rng or random.Random(get_settings().seed)
    positions = set(shape_positions(N, n, "classical", degenerate=True))
    rows = [[[Fraction(0)] * N for _ in range(N)] for _ in range(n + 1)]
    for a, i, j in sorted(positions):
        value = _random_rational(rng)
        # nonzero diagonal of mu keeps p(mu)_11 invertible
        while a == n and i == j and value == 0:
            value = _random_rational(rng)
        rows[a][i - 1][j - 1] = value
    if on_reduction_surface:
        p = characteristic_shift(rows[n])
        nu = rows[n - 1][0]
        rest = sum((nu[b] * p[b][0] for b in range(1, N)), Fraction(0))
        nu[0] = -rest / p[0][0]
    return NumericLax(N, n, backend, tuple(_from_rows(r, backend) for r in rows))


@dataclass
class ReductionResult:
    """s, the coefficients of m(z) and the block degree checks."""

    s: Any
    m: list[Any]
    checks: dict[str, bool] = field(default_factory=dict)
    d0: list[list[Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def build_s(lax: NumericLax) -> Any:
    """Rows e_1, nu mu^{N-2}, ..., nu mu, nu."""
    N = lax.N
    if lax.backend == "float":
        s = np.zeros((N, N))
        s[0, 0] = 1.0
        row = lax.nu
        for i in range(N, 1, -1):
            s[i - 1, :] = row
            row = row @ lax.mu
        return s
    rows: list[Any] = [None] * N
    rows[0] = DomainMatrix([[QQ(int(j == 0)) for j in range(N)]], (1, N), QQ)
    row = lax.nu
    for i in range(N, 1, -1):
        rows[i - 1] = row
        row = row * lax.mu
    return DomainMatrix.vstack(*rows)


def classical_reduce(lax: NumericLax, tolerance: float | None = None) -> ReductionResult:
    """Compute m(z) = s l(z) s^{-1} and check its block degree structure.

    Raises:
        SingularSimilarityError: If s is not invertible at this sample.
    """
    N, n = lax.N, lax.n
    s = build_s(lax)
    if lax.backend == "float":
        if abs(np.linalg.det(s)) < 1e-12:
            raise SingularSimilarityError("s is numerically singular; resample the Lax matrix")
        s_inv = np.linalg.inv(s)
        m = [s @ C @ s_inv for C in lax.coeffs]
        tol = tolerance if tolerance is not None else get_settings().float_tolerance
        scale = max(1.0, *(float(np.max(np.abs(M))) for M in m))

        def is_zero(x: Any) -> bool:
            return abs(float(x)) <= tol * scale

        def entry(M: Any, i: int, j: int) -> Any:
            return M[i, j]

    else:
        try:
            s_inv = s.inv()
        except DMNonInvertibleMatrixError as e:
            raise SingularSimilarityError("s is singular; resample the Lax matrix") from e
        m = [s * C * s_inv for C in lax.coeffs]

        def is_zero(x: Any) -> bool:
            return x == 0

        def entry(M: Any, i: int, j: int) -> Any:
            return _entry(M, i, j, "exact")

    def degree(i: int, j: int) -> int:
        return max((a for a in range(n + 1) if not is_zero(entry(m[a], i, j))), default=-1)

    checks = {
        "deg a <= n-2": degree(0, 0) <= n - 2,
        "deg c <= n-1": all(degree(i, 0) <= n - 1 for i in range(1, N)),
        "deg b <= n-1": all(degree(0, j) <= n - 1 for j in range(1, N)),
        "b^(n-1) = e_{N-1}": all(
            is_zero(entry(m[n - 1], 0, j) - (1 if j == N - 1 else 0)) for j in range(1, N)
        ),
        "deg d <= n": all(degree(i, j) <= n for i in range(1, N) for j in range(1, N)),
    }
    d0 = [[entry(m[n], i, j) for j in range(1, N)] for i in range(1, N)]
    result = ReductionResult(s, m, checks, d0)
    if not result.passed:
        failed = [name for name, ok in checks.items() if not ok]
        logger.info(f"Classical reduction N={N} n={n}: failed {failed}")
    return result
