"""Quantum model: L(z), the RTT relation set and the quantum determinant."""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Literal

from sympy.polys.rings import PolyElement

from spectral_reduction.algebra.qscalars import Q, S_HALF, K, classical_ring, coefficient_ring
from spectral_reduction.algebra.rmatrix import Reading, spectral_R
from spectral_reduction.config import get_settings
from spectral_reduction.exceptions import ModelError
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.alphabet import Alphabet, GenId, GenKind, mu_exists
from spectral_reduction.noncommutative.membership import MembershipChecker
from spectral_reduction.noncommutative.polynomial import GradedNCMatrix, NCMatrix, NCPoly
from spectral_reduction.noncommutative.relations import RelationSet
from spectral_reduction.quantum.verdicts import (
    CheckReport,
    Verdict,
    classical_verdict,
    membership_verdict,
    verify_targets,
)

logger = get_logger(__name__)

QdetShift = Literal["fused", "printed"]

RTT_VARIABLES = ("z1", "z2")
QDET_VARIABLES = ("w", "z")


@dataclass(frozen=True)
class QuantumModel:
    """Alphabet, relations and graded L(z) = sum_a L^{(a)} z^a with L^{(n)} = mu."""

    N: int
    n: int
    reading: Reading
    alphabet: Alphabet
    rels: RelationSet
    L: GradedNCMatrix = field(repr=False)

    @property
    def mu(self) -> NCMatrix:
        return self.L[self.n]

    def generator(self, gen: GenId) -> NCPoly:
        return NCPoly.generator(self.alphabet, gen)

    def nu(self) -> list[NCPoly]:
        """First row of L^{(n-1)}: e_1 L(z) = z^{n-1} nu + O(z^{n-2})."""
        return [self.L[self.n - 1][0, j] for j in range(self.N)]


def build_L(alphabet: Alphabet) -> GradedNCMatrix:
    """Generic L(z) over the alphabet; mu keeps its structural zeros."""
    N, n = alphabet.N, alphabet.n
    coeffs = []
    for a in range(n + 1):
        M = NCMatrix.zeros(N, N, alphabet)
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if a < n:
                    M.entries[i - 1][j - 1] = NCPoly.generator(alphabet, GenId.lcoef(a, i, j))
                elif mu_exists(i, j):
                    M.entries[i - 1][j - 1] = NCPoly.generator(alphabet, GenId.mu(i, j))
        coeffs.append(M)
    return GradedNCMatrix(coeffs)


def build_model(N: int, n: int, reading: Reading | None = None) -> QuantumModel:
    """Expand R(z1,z2) L1(z1) L2(z2) - L2(z2) L1(z1) R(z1,z2) into quadratic relations.

    Args:
        N: Matrix size.
        n: Spectral degree of L(z).
        reading: Constant R-matrix reading; defaults to the configured one.

    Returns:
        The quantum model with deduplicated RTT relations.

    Raises:
        ModelError: If N < 2 or n < 1.
    """
    reading = reading or get_settings().constant_r_reading
    alphabet = Alphabet.build(N, n)
    L = build_L(alphabet)
    ring = coefficient_ring(RTT_VARIABLES)

    R = NCMatrix.from_cmatrix(spectral_R(N, "z1", "z2", ring, reading), alphabet, ring)
    identity = NCMatrix.identity(N, alphabet, ring)
    L1 = L.evaluate("z1", ring).kron(identity)
    L2 = identity.kron(L.evaluate("z2", ring))
    defect = R @ L1 @ L2 - L2 @ L1 @ R

    candidates: list[tuple[NCPoly, str]] = []
    for row, col, entry in defect:
        i, k = divmod(row, N)
        j, l = divmod(col, N)
        for (a, b), part in entry.split_commutative().items():
            candidates.append((part, f"RTT[{i + 1}{k + 1},{j + 1}{l + 1}] z1^{a} z2^{b}"))
    rels = RelationSet.collect(alphabet, candidates, homogeneous=True)
    logger.info(f"RTT model N={N} n={n} ({reading}): {len(alphabet)} generators, {len(rels)} relations")
    return QuantumModel(N, n, reading, alphabet, rels, L)


# Quantum determinant


def permutation_length(perm: tuple[int, ...] | list[int]) -> int:
    """Minimal number of adjacent transpositions, i.e. the inversion count."""
    return sum(1 for a, b in combinations(range(len(perm)), 2) if perm[a] > perm[b])


def row_shift_exponent(N: int, row: int, shift: QdetShift) -> int:
    """Exponent of q^{1/2} multiplying z in row ``row`` (0-based)."""
    step = N - 1 - 2 * row
    return step if shift == "printed" else 2 * step


@dataclass(frozen=True)
class QuantumDeterminant:
    """Coefficients of q-det(L(z)) or q-det(wI + L(z)) keyed by (w power, z power)."""

    N: int
    n: int
    offset_w: bool
    shift: QdetShift
    coefficients: dict[tuple[int, int], NCPoly]
    alphabet: Alphabet

    def coefficient(self, w_power: int, z_power: int) -> NCPoly:
        return self.coefficients.get((w_power, z_power), NCPoly.zero(self.alphabet))

    def z_coefficients(self) -> list[NCPoly]:
        """q-det(L(z)) coefficients, index = power of z, zeros included."""
        return [self.coefficient(0, a) for a in range(self.N * self.n + 1)]

    def t(self, k: int, j: int) -> NCPoly:
        """t_k^{(j)}: coefficient of w^{N-k} z^{kn-j}."""
        return self.coefficient(self.N - k, k * self.n - j)

    def integrals(self) -> dict[tuple[int, int], NCPoly]:
        """Nonzero non-constant t_k^{(j)} for k >= 1."""
        out = {}
        for k in range(1, self.N + 1):
            for j in range(k * self.n + 1):
                value = self.t(k, j)
                if value and value.degree() > 0:
                    out[(k, j)] = value
        return out


def qdet(model: QuantumModel, offset_w: bool = False, shift: QdetShift | None = None) -> QuantumDeterminant:
    """Quantum determinant with rows ordered 1..N and decreasing shifted arguments.

    sum_pi (-q)^{l(pi)} L_{1 pi(1)}(z c_1) ... L_{N pi(N)}(z c_N), where
    ``shift`` picks c_k: ``printed`` uses q^{(N+1)/2-k}, ``fused`` uses
    q^{N+1-2k} (the point where R(z, z') drops rank).
    """
    shift = shift or get_settings().qdet_shift
    N, alphabet = model.N, model.alphabet
    ring = coefficient_ring(QDET_VARIABLES)
    w = ring.gens[0]
    identity = NCMatrix.identity(N, alphabet, ring)

    rows = []
    for k in range(N):
        e = row_shift_exponent(N, k, shift)
        Lk = model.L.evaluate("z", ring, scale_power=lambda a, e=e: S_HALF ** (e * a))
        if offset_w:
            Lk = Lk + identity.scale(w)
        rows.append(Lk)

    total = NCPoly.zero(alphabet, ring)
    minus_q = -Q
    for perm in permutations(range(N)):
        term = NCPoly.constant(alphabet, minus_q ** permutation_length(perm), ring)
        for k, p in enumerate(perm):
            term = term * rows[k][k, p]
            if not term:
                break
        total = total + term
    return QuantumDeterminant(
        N, model.n, offset_w, shift, dict(total.split_commutative()), alphabet
    )


def commutative_determinant(model: QuantumModel) -> list[PolyElement]:
    """det L(z) with commuting generators, as z-coefficients over Q."""
    names = tuple(model.alphabet.names())
    ring = classical_ring((*names, "z"))
    z = ring.gens[-1]
    matrix = [[ring.zero] * model.N for _ in range(model.N)]
    for a in range(model.n + 1):
        for i, j, value in model.L[a]:
            for word in value.terms:
                matrix[i][j] += ring.gens[word[0]] * z**a
    total = ring.zero
    for perm in permutations(range(model.N)):
        term = ring(-1 if permutation_length(perm) % 2 else 1)
        for k, p in enumerate(perm):
            term *= matrix[k][p]
        total += term
    target = classical_ring(names)
    parts = [target.zero for _ in range(model.N * model.n + 1)]
    for monom, coeff in total.terms():
        parts[monom[-1]] += target.from_dict({monom[:-1]: coeff})
    return parts



# Checks


def _checker(model: QuantumModel, degree_bound: int | None) -> MembershipChecker:
    return MembershipChecker(model.rels, degree_bound)


def check_integrals_commute(
    model: QuantumModel,
    k1: int,
    j1: int,
    k2: int,
    j2: int,
    degree_bound: int | None = None,
    det: QuantumDeterminant | None = None,
    checker: MembershipChecker | None = None,
) -> Verdict:
    """Membership of [t_{k1}^{(j1)}, t_{k2}^{(j2)}] in the RTT ideal."""
    det = det or qdet(model, offset_w=True)
    checker = checker or _checker(model, degree_bound)
    target = det.t(k1, j1).commutator(det.t(k2, j2))
    return membership_verdict(
        checker,
        target,
        "integrals-commute",
        f"[t{k1}^{j1},t{k2}^{j2}]",
        "q-det(wI+L(z)) integrals of motion",
    )


def check_all_integrals_commute(
    model: QuantumModel, degree_bound: int | None = None, shift: QdetShift | None = None
) -> CheckReport:
    """Pairwise commutators of all non-constant q-det(wI + L(z)) coefficients."""
    det = qdet(model, offset_w=True, shift=shift)
    checker = _checker(model, degree_bound)
    keys = sorted(det.integrals())
    report = CheckReport("integrals-commute", "q-det(wI+L(z)) integrals of motion")
    report.notes["qdet_shift"] = det.shift
    for (k1, j1), (k2, j2) in combinations(keys, 2):
        report.verdicts.append(
            check_integrals_commute(model, k1, j1, k2, j2, det=det, checker=checker)
        )
    return report


def check_qdet_centrality(
    model: QuantumModel, degree_bound: int | None = None, shift: QdetShift | None = None
) -> CheckReport:
    """[c, x] for every q-det(L(z)) coefficient c and every generator x.

    Results are recorded, not asserted; the sweep is meant for N = 2.
    """
    det = qdet(model, offset_w=False, shift=shift)
    checker = _checker(model, degree_bound)
    report = CheckReport("qdet-center", "q-det(L(z)) elements of the center")
    report.notes["qdet_shift"] = det.shift
    for a, c in enumerate(det.z_coefficients()):
        if not c:
            continue
        for gen in model.alphabet.gens:
            x = model.generator(gen)
            report.verdicts.append(
                membership_verdict(
                    checker,
                    c.commutator(x),
                    report.check,
                    f"[qdet^{a},{gen.name}]",
                    report.anchor,
                )
            )
    return report


def _q_power(flag: bool) -> object:
    return Q if flag else K.one


def xx_targets(model: QuantumModel, printed_nu: bool = False) -> dict[str, NCPoly]:
    """Entrywise targets of the mu_jj exchange relations.

    mu_jj q^{E^{jj}} mu = mu q^{E^{jj}} mu_jj gives
    q^{d_aj} mu_jj mu_ab - q^{d_bj} mu_ab mu_jj; for nu the graded form
    mu_jj nu_b - q^{d_bj} nu_b mu_jj is used, or nu_b mu_jj - mu_jj nu_b
    when ``printed_nu`` is set.
    """
    N = model.N
    mu, nu = model.mu, model.nu()
    targets: dict[str, NCPoly] = {}
    for j in range(2, N + 1):
        mjj = mu[j - 1, j - 1]
        for a in range(1, N + 1):
            for b in range(1, N + 1):
                mab = mu[a - 1, b - 1]
                lhs = (mjj * mab).scale(_q_power(a == j))
                rhs = (mab * mjj).scale(_q_power(b == j))
                targets[f"mu[{j}]({a},{b})"] = lhs - rhs
        for b in range(1, N + 1):
            if printed_nu:
                target = nu[b - 1] * mjj - mjj * nu[b - 1]
            else:
                target = mjj * nu[b - 1] - (nu[b - 1] * mjj).scale(_q_power(b == j))
            targets[f"nu[{j}]({b})"] = target
    return targets


def check_xx_relations(
    model: QuantumModel, degree_bound: int | None = None, printed_nu: bool = False
) -> CheckReport:
    """Verify the mu_jj exchange relations entrywise by ideal membership."""
    name = "xx-printed" if printed_nu else "xx"
    report = CheckReport(name, "mu_jj q^{E^jj} mu = mu q^{E^jj} mu_jj; nu mu_jj")
    return verify_targets(
        _checker(model, degree_bound),
        xx_targets(model, printed_nu),
        report,
        lambda target: target.specialize_commutative(1),
    )


def check_classical_degeneration(model: QuantumModel) -> CheckReport:
    """Every relation vanishes at q = 1 with commuting generators."""
    report = CheckReport("rtt-classical", "RTT relations at q=1")
    for rel, origin in zip(model.rels.relations, model.rels.provenance, strict=True):
        report.verdicts.append(classical_verdict(rel, report.check, origin, report.anchor))
    return report


def regrade(poly: NCPoly, factor: int) -> NCPoly:
    """Apply L^{(a)} -> factor^{n-a} L^{(a)} to every generator in ``poly``."""
    alphabet = poly.alphabet
    weights = []
    for gen in alphabet.gens:
        if gen.kind == GenKind.LCOEF:
            weights.append(alphabet.n - gen.a)
        elif gen.kind == GenKind.MU:
            weights.append(0)
        else:
            raise ModelError("Regrading is defined on the unlocalized alphabet only")
    terms = {
        word: coeff * factor ** sum(weights[g] for g in word)
        for word, coeff in poly.terms.items()
    }
    return NCPoly(alphabet, poly.domain, terms)


def check_regrading_invariance(
    model: QuantumModel, factor: int = 2, degree_bound: int | None = None
) -> CheckReport:
    """The image of each relation under z -> factor*z regrading lies in the ideal."""
    checker = _checker(model, degree_bound)
    report = CheckReport("rtt-regrading", "z -> lambda z invariance of the RTT relations")
    for rel, origin in zip(model.rels.relations, model.rels.provenance, strict=True):
        report.verdicts.append(
            membership_verdict(checker, regrade(rel, factor), report.check, origin, report.anchor)
        )
    return report
