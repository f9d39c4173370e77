"""Characteristic-polynomial integrals, their involution and the center."""

from dataclasses import dataclass, field
from itertools import combinations

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from spectral_reduction.algebra.qscalars import classical_ring
from spectral_reduction.classical.brackets import ClassicalModel, poisson_bracket
from spectral_reduction.logging import get_logger

logger = get_logger(__name__)


def char_coefficients(model: ClassicalModel) -> dict[tuple[int, int], PolyElement]:
    """t_k^{(j)} from det(wI + l(z)) = sum_k w^{N-k} t_k(z), t_k(z) = sum_j t_k^{(j)} z^{nk-j}."""
    N, n = model.N, model.n
    names = tuple(str(s) for s in model.ring.symbols)
    big = classical_ring(names + ("w", "z"))
    w, z = big.gens[-2], big.gens[-1]
    rows = [
        [model.lax_entry(i, j, z, big) + (w if i == j else big.zero) for j in range(1, N + 1)]
        for i in range(1, N + 1)
    ]
    det = DomainMatrix(rows, (N, N), big.to_domain()).det()
    ngens = len(names)
    parts: dict[tuple[int, int], dict[tuple[int, ...], object]] = {}
    for monom, coeff in det.terms():
        w_power, z_power = monom[ngens], monom[ngens + 1]
        k = N - w_power
        parts.setdefault((k, n * k - z_power), {})[monom[:ngens]] = coeff
    return {key: model.ring.from_dict(value) for key, value in sorted(parts.items())}


def is_central_index(N: int, n: int, k: int, j: int) -> bool:
    """t_N^{(j)} for every j and t_k^{(kn)} = t_k(0) for every k."""
    return k == N or j == k * n


@dataclass
class InvariantReport:
    """Outcome of an involution or centrality sweep."""

    check: str
    pairs_checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_involution(model: ClassicalModel) -> InvariantReport:
    """{t_k^{(i)}, t_m^{(j)}} = 0 for all pairs of non-constant coefficients."""
    coeffs = {key: c for key, c in char_coefficients(model).items() if not c.is_ground}
    report = InvariantReport("involution")
    for (a, ca), (b, cb) in combinations(coeffs.items(), 2):
        report.pairs_checked += 1
        if poisson_bracket(ca, cb, model):
            report.failures.append(f"{{t{a[0]}^{a[1]}, t{b[0]}^{b[1]}}}")
    logger.info(f"Involution N={model.N} n={model.n}: {report.pairs_checked} pairs, {len(report.failures)} failures")
    return report


def check_center(model: ClassicalModel) -> InvariantReport:
    """Central coefficients bracket to zero with every generator.

    The first non-central coefficient is also swept and a nonzero bracket is
    recorded as the witness that the center is proper.
    """
    N, n = model.N, model.n
    coeffs = char_coefficients(model)
    report = InvariantReport("center")
    for (k, j), c in coeffs.items():
        if not is_central_index(N, n, k, j) or c.is_ground:
            continue
        for x in model.gens:
            report.pairs_checked += 1
            if poisson_bracket(c, x, model):
                report.failures.append(f"{{t{k}^{j}, {x}}}")
    report.notes["noncentral_witness"] = "none found"
    for (k, j), c in coeffs.items():
        if is_central_index(N, n, k, j) or c.is_ground:
            continue
        hit = next((x for x in model.gens if poisson_bracket(c, x, model)), None)
        if hit is not None:
            report.notes["noncentral_witness"] = f"{{t{k}^{j}, {hit}}} != 0"
            break
    return report


@dataclass(frozen=True)
class DimensionReport:
    N: int
    n: int
    generators: int
    central: int
    dim_M: int
    integrals: int
    genus: int
    dim_reduced: int

    @property
    def identities_hold(self) -> bool:
        return (
            self.dim_M == self.generators - self.central
            and self.dim_M == 2 * self.genus + 2 * (self.N - 1)
            and 2 * self.integrals == self.dim_M
        )


def dimension_report(N: int, n: int) -> DimensionReport:
    """Phase-space dimension, genus and integral counts of the classical model.

    Generators of the classical shape number nN^2 + N. The central ones are
    t_N^{(j)} (Nn + 1 of them) and t_k(0) for k < N. The remaining
    coefficients of t_1..t_{N-1} are the integrals.
    """
    generators = n * N * N + N
    central = (N * n + 1) + (N - 1)
    integrals = sum(k * n for k in range(1, N))
    twice_genus = (N - 1) * (N * n - 2)
    return DimensionReport(
        N=N,
        n=n,
        generators=generators,
        central=central,
        dim_M=n * N * (N - 1),
        integrals=integrals,
        genus=twice_genus // 2,
        dim_reduced=twice_genus,
    )
