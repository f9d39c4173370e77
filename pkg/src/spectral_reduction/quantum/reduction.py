"""Reduction data nu, S, t_j, S-hat and the identities built on them.

Inverse-free forms are checked in the RTT ideal. Only the M(z) structure and
the closed commutation relation adjoin sigma = S^{-1}.
"""

from dataclasses import dataclass
from itertools import product
from typing import Literal

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from spectral_reduction.algebra.matrices import CMatrix, leg_permutation
from spectral_reduction.algebra.qscalars import Q, Q_INV, K, coefficient_ring
from spectral_reduction.algebra.rmatrix import (
    build_U,
    build_Y_Z_K_Rtilde,
    constant_R,
    spectral_R,
    swap_legs,
    t_names,
)
from spectral_reduction.config import get_settings
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.alphabet import Alphabet, GenId
from spectral_reduction.noncommutative.membership import MembershipChecker
from spectral_reduction.noncommutative.polynomial import NCMatrix, NCPoly
from spectral_reduction.noncommutative.relations import RelationSet, enable_localization
from spectral_reduction.quantum.rtt import QuantumModel, build_model
from spectral_reduction.quantum.verdicts import CheckReport, verify_targets

logger = get_logger(__name__)

SHatReading = Literal["scalar", "exponent", "inverse"]

S_HAT_READINGS: tuple[SHatReading, ...] = ("scalar", "exponent", "inverse")

CLOSED_VARIABLES = ("z1", "z2")


@dataclass(frozen=True)
class ReductionData:
    """nu, S, t_0..t_{N-1}, S-hat_12 and U with t_j substituted."""

    model: QuantumModel
    nu: NCMatrix
    S: NCMatrix
    t: tuple[NCPoly, ...]
    S_hat: NCMatrix
    s_hat_reading: SHatReading
    U: NCMatrix

    @property
    def S_hat_21(self) -> NCMatrix:
        return self.S_hat.conjugate_by_permutation(leg_permutation(self.model.N, (1, 0)))

    def substitutions(self) -> dict[str, NCPoly]:
        return {name: self.t[j] for j, name in enumerate(t_names(self.model.N), start=1)}


def characteristic_coefficients(mu: NCMatrix) -> tuple[NCPoly, ...]:
    """t_j from prod_{j=2}^N (x - q^{-1} mu_jj) = sum_j x^{N-1-j} t_j, factors left to right."""
    N, alphabet = mu.rows, mu.alphabet
    coeffs = [NCPoly.constant(alphabet, 1)]
    for j in range(2, N + 1):
        root = mu[j - 1, j - 1].scale(Q_INV)
        expanded = [NCPoly.zero(alphabet) for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            expanded[k + 1] = expanded[k + 1] + c
            expanded[k] = expanded[k] - c * root
        coeffs = expanded
    return tuple(coeffs[N - 1 - j] for j in range(N))


def build_S(nu: NCMatrix, mu: NCMatrix) -> NCMatrix:
    """Rows e_1, nu mu^{N-2}, ..., nu mu, nu."""
    N, alphabet = mu.rows, mu.alphabet
    S = NCMatrix.zeros(N, N, alphabet)
    S.entries[0][0] = NCPoly.constant(alphabet, 1)
    row = nu
    for i in range(N, 1, -1):
        S.entries[i - 1] = list(row.entries[0])
        row = row @ mu
    return S


def build_S_hat(model: QuantumModel, nu: NCMatrix, reading: SHatReading) -> NCMatrix:
    """S-hat_12 with the block (nu (x) I)(R_12 (mu (x) I))^{N-i} in slot-1 row i.

    The factor E^{ii} (x) I places the N x N^2 block into rows (i, .), the
    same way S stacks nu mu^{N-i}. The first term is q E^{11} (x) q^{E^{11}}
    (``scalar``), q^{E^{11}} (x) q^{E^{11}} (``exponent``) or
    q E^{11} (x) q^{-E^{11}} (``inverse``).
    """
    N, alphabet = model.N, model.alphabet
    identity = NCMatrix.identity(N, alphabet)
    R12 = NCMatrix.from_cmatrix(constant_R(N, model.reading), alphabet)
    step = R12 @ model.mu.kron(identity)

    S_hat = NCMatrix.zeros(N * N, N * N, alphabet)
    block = nu.kron(identity)
    for i in range(N, 1, -1):
        for b in range(N):
            S_hat.entries[(i - 1) * N + b] = list(block.entries[b])
        block = block @ step

    for a, b in product(range(N), repeat=2):
        if reading == "scalar":
            if a != 0:
                continue
            factor = Q * (Q if b == 0 else K.one)
        elif reading == "exponent":
            factor = (Q if a == 0 else K.one) * (Q if b == 0 else K.one)
        elif reading == "inverse":
            if a != 0:
                continue
            factor = Q * (Q_INV if b == 0 else K.one)
        else:
            raise ValueError(f"Unknown S-hat reading: {reading}")
        r = a * N + b
        S_hat.entries[r][r] = S_hat.entries[r][r] + NCPoly.constant(alphabet, factor)
    return S_hat


def build_reduction(model: QuantumModel, s_hat_reading: SHatReading | None = None) -> ReductionData:
    """Build nu, S, t_j, U and S-hat_12 from the model's generators."""
    reading = s_hat_reading or get_settings().s_hat_reading
    N, alphabet = model.N, model.alphabet
    nu = NCMatrix([model.nu()], alphabet, K)
    S = build_S(nu, model.mu)
    t = characteristic_coefficients(model.mu)
    U = NCMatrix.from_cmatrix(
        build_U(N), alphabet, substitutions={name: t[j] for j, name in enumerate(t_names(N), 1)}
    )
    S_hat = build_S_hat(model, nu, reading)
    logger.debug(f"Reduction data built for N={N} n={model.n} (S-hat {reading})")
    return ReductionData(model, nu, S, t, S_hat, reading, U)


# q=1 layer


def classical_residue(target: NCPoly) -> PolyElement:
    return target.specialize_commutative(1)


def _pad(poly: PolyElement, ring: PolyRing) -> PolyElement:
    extra = ring.ngens - poly.ring.ngens
    return ring.from_dict({monom + (0,) * extra: c for monom, c in poly.terms()})


def cleared_classical_residue(target: NCPoly, S: NCMatrix) -> PolyElement:
    """q=1 value of a localized target with sigma -> adj(S)/det(S), times det(S)^D.

    ``D`` is the largest number of sigma factors in one word; the result is a
    polynomial that vanishes iff the rational q=1 value does.
    """
    value = target.specialize_commutative(1)
    if not value:
        return value
    ring = value.ring
    alphabet = target.alphabet
    N = alphabet.N
    sigma_at = {
        alphabet.position(GenId.sigma_inv(i + 1, j + 1)): (i, j)
        for i, j in product(range(N), repeat=2)
    }
    rows = [[_pad(S[i, j].specialize_commutative(1), ring) for j in range(N)] for i in range(N)]
    adj, det = DomainMatrix(rows, (N, N), ring.to_domain()).adj_det()
    adj_rows = adj.to_list()

    def sigma_degree(monom: tuple[int, ...]) -> int:
        return sum(monom[p] for p in sigma_at)

    top = max(sigma_degree(m) for m in value.itermonoms())
    total = ring.zero
    for monom, coeff in value.terms():
        base = list(monom)
        for p in sigma_at:
            base[p] = 0
        term = ring.from_dict({tuple(base): coeff})
        for p, (i, j) in sigma_at.items():
            if monom[p]:
                term *= adj_rows[i][j] ** monom[p]
        total += term * det ** (top - sigma_degree(monom))
    return total


# Checks in the RTT ideal


def _targets_from_matrix(
    prefix: str, difference: NCMatrix, split: bool = False, names: tuple[str, ...] = ()
) -> dict[str, NCPoly]:
    targets: dict[str, NCPoly] = {}
    for r, c, value in difference:
        entry = f"{prefix}({r + 1},{c + 1})"
        if not split:
            targets[entry] = value
            continue
        parts = value.split_commutative()
        if not parts:
            targets[entry] = NCPoly.zero(value.alphabet)
        for monom, part in parts.items():
            label = " ".join(f"{v}^{e}" for v, e in zip(names, monom, strict=True))
            targets[f"{entry} {label}"] = part
    return targets


def char_identity_targets(model: QuantumModel, red: ReductionData) -> dict[str, NCPoly]:
    """Components of sum_k t_k nu mu^{N-1-k} and the entries of S mu - U S."""
    N = model.N
    powers = [red.nu]
    for _ in range(N - 1):
        powers.append(powers[-1] @ model.mu)
    targets: dict[str, NCPoly] = {}
    for b in range(N):
        total = NCPoly.zero(model.alphabet)
        for k in range(N):
            total = total + red.t[k] * powers[N - 1 - k][0, b]
        targets[f"ch({b + 1})"] = total
    targets.update(_targets_from_matrix("Smu-US", red.S @ model.mu - red.U @ red.S))
    return targets


def check_char_identity(
    model: QuantumModel, red: ReductionData, degree_bound: int | None = None
) -> CheckReport:
    """sum_k t_k nu mu^{N-1-k} = 0 componentwise, then S mu = U S entrywise."""
    report = CheckReport("char-identity", "characteristic identity; S mu = U S")
    return verify_targets(
        MembershipChecker(model.rels, degree_bound),
        char_identity_targets(model, red),
        report,
        classical_residue,
    )


def au1_targets(model: QuantumModel, red: ReductionData) -> dict[str, NCPoly]:
    """Y_12 (S(x)I) S-hat_21 - (I(x)S) S-hat_12 R_12 entrywise."""
    N, alphabet = model.N, model.alphabet
    Y12 = NCMatrix.from_cmatrix(
        build_Y_Z_K_Rtilde(N).Y12, alphabet, substitutions=red.substitutions()
    )
    identity = NCMatrix.identity(N, alphabet)
    R12 = NCMatrix.from_cmatrix(constant_R(N, model.reading), alphabet)
    au1 = Y12 @ red.S.kron(identity) @ red.S_hat_21 - identity.kron(red.S) @ red.S_hat @ R12
    return _targets_from_matrix("au1", au1)


def aux_targets(model: QuantumModel, red: ReductionData) -> dict[str, NCPoly]:
    """Both auxiliary relations with T(z) read as L(z).

    In the second one (M(z) (x) I)(S (x) I) is rewritten as (S L(z)) (x) I, so no
    inverse of S appears; R_21(q) stays on the right-hand side as printed.
    """
    N, alphabet = model.N, model.alphabet
    subs = red.substitutions()
    mats = build_Y_Z_K_Rtilde(N)
    identity = NCMatrix.identity(N, alphabet)
    R21 = NCMatrix.from_cmatrix(swap_legs(constant_R(N, model.reading)), alphabet)
    SI_hat21 = red.S.kron(identity) @ red.S_hat_21
    targets = au1_targets(model, red)

    ring = coefficient_ring(("z",))
    Z12 = NCMatrix.from_cmatrix(mats.Z12, alphabet, ring, subs)
    L = model.L.evaluate("z", ring)
    ident_z = NCMatrix.identity(N, alphabet, ring)
    S_z = red.S.with_domain(ring)
    lhs = SI_hat21.with_domain(ring) @ L.kron(ident_z)
    rhs = Z12 @ (S_z @ L).kron(ident_z) @ red.S_hat_21.with_domain(ring) @ R21.with_domain(ring)
    targets.update(_targets_from_matrix("au2", lhs - rhs, split=True, names=("z",)))
    return targets


def check_aux_relations(
    model: QuantumModel, red: ReductionData, degree_bound: int | None = None
) -> CheckReport:
    """Inverse-free auxiliary relations, entrywise and per z-coefficient."""
    report = CheckReport("aux", "auxiliary relations")
    report.notes["T(z)"] = "read as L(z)"
    report.notes["s_hat_reading"] = red.s_hat_reading
    return verify_targets(
        MembershipChecker(model.rels, degree_bound),
        aux_targets(model, red),
        report,
        classical_residue,
    )


def select_s_hat_reading(model: QuantumModel) -> SHatReading:
    """First S-hat reading whose first auxiliary relation holds entrywise at N=2, n=1.

    The decision is made on the N=2, n=1 model with the same constant R reading
    and then used for every size.
    """
    base = model if (model.N, model.n) == (2, 1) else build_model(2, 1, model.reading)
    checker = MembershipChecker(base.rels)
    for reading in S_HAT_READINGS:
        red = build_reduction(base, reading)
        report = verify_targets(
            checker, au1_targets(base, red), CheckReport("au1", "S-hat selection"), classical_residue
        )
        if report.all_members:
            logger.info(f"S-hat reading selected: {reading}")
            return reading
        logger.debug(f"S-hat reading {reading} rejected: {report.counts()}")
    logger.warning("No S-hat reading satisfies the first auxiliary relation; keeping the configured one")
    return get_settings().s_hat_reading


def check_tj_commute_with_M(
    model: QuantumModel, red: ReductionData, degree_bound: int | None = None
) -> CheckReport:
    """[t_j, S_ab] and [t_j, (S L^{(a)})_rc] for all j, entries and z-coefficients."""
    N = model.N
    targets: dict[str, NCPoly] = {}
    for j in range(1, N):
        tj = red.t[j]
        for r, c, value in red.S:
            targets[f"[t{j},S({r + 1},{c + 1})]"] = tj.commutator(value)
        for a in range(model.n + 1):
            for r, c, value in red.S @ model.L[a]:
                targets[f"[t{j},SL^{a}({r + 1},{c + 1})]"] = tj.commutator(value)
    report = CheckReport("tj-commute", "t_j commute with elements of M(z)")
    return verify_targets(
        MembershipChecker(model.rels, degree_bound), targets, report, classical_residue
    )


def check_mu_diagonal_commute(model: QuantumModel, degree_bound: int | None = None) -> CheckReport:
    """Record whether [mu_ii, mu_jj] lies in the ideal (t_j ordering question)."""
    mu = model.mu
    targets = {
        f"[mu{i}{i},mu{j}{j}]": mu[i - 1, i - 1].commutator(mu[j - 1, j - 1])
        for i in range(2, model.N + 1)
        for j in range(i + 1, model.N + 1)
    }
    report = CheckReport("mu-diagonal", "ordering of prod (x - q^{-1} mu_jj)")
    return verify_targets(MembershipChecker(model.rels, degree_bound), targets, report)


# Localized checks


@dataclass(frozen=True)
class LocalizedReduction:
    """Reduction data re-homed on the alphabet extended by sigma = S^{-1}."""

    red: ReductionData
    rels: RelationSet
    alphabet: Alphabet
    sigma: NCMatrix
    S: NCMatrix
    S_hat: NCMatrix
    U: NCMatrix
    t: tuple[NCPoly, ...]

    def L(self, a: int) -> NCMatrix:
        return self.red.model.L[a].with_alphabet(self.alphabet)

    def M_coefficient(self, a: int) -> NCMatrix:
        return self.S @ self.L(a) @ self.sigma


def localize(red: ReductionData) -> LocalizedReduction:
    rels, sigma = enable_localization(red.model.rels, red.S)
    alphabet = rels.alphabet
    return LocalizedReduction(
        red,
        rels,
        alphabet,
        sigma,
        red.S.with_alphabet(alphabet),
        red.S_hat.with_alphabet(alphabet),
        red.U.with_alphabet(alphabet),
        tuple(t.with_alphabet(alphabet) for t in red.t),
    )


def m_structure_targets(model: QuantumModel, loc: LocalizedReduction) -> dict[str, NCPoly]:
    """z^n coefficient of M(z) against U and the z^{n-1} part of its first row.

    Together these are the excess coefficients of the blocks A, B, C, D.
    """
    N, n = model.N, model.n
    leading = loc.M_coefficient(n)
    targets = _targets_from_matrix("M^n-U", leading - loc.U)
    below = loc.M_coefficient(n - 1)
    for j in range(N):
        expected = NCPoly.constant(loc.alphabet, 1 if j == N - 1 else 0)
        targets[f"e1M^{n - 1}({j + 1})"] = below[0, j] - expected
    return targets


def check_M_structure(
    model: QuantumModel,
    red: ReductionData,
    degree_bound: int | None = None,
    loc: LocalizedReduction | None = None,
) -> CheckReport:
    """Leading structure of M(z) = S L(z) S^{-1} in the localized ideal."""
    loc = loc or localize(red)
    report = CheckReport("m-structure", "M(z) = z^n U + O(z^{n-1}); e_1 M(z) = z^{n-1} e_N")
    return verify_targets(
        MembershipChecker(loc.rels, degree_bound),
        m_structure_targets(model, loc),
        report,
        lambda target: cleared_classical_residue(target, loc.S),
    )


def closed_relation_targets(
    model: QuantumModel, loc: LocalizedReduction, identities: tuple[str, ...] = ("A", "B")
) -> dict[str, NCPoly]:
    """Inverse-cleared closed relations (A) and (B) per entry and z1^a z2^b.

    (A) R~ K12(z1) M1 K21(z2) M2 (S(x)I) S-hat_21 = (I(x)S) S-hat_12 R L1 L2
    (B) K21(z2) M2 K12(z1) M1 R~ (S(x)I) S-hat_21 = (I(x)S) S-hat_12 L2 L1 R
    with M = S L sigma.
    """
    N, alphabet = model.N, loc.alphabet
    ring = coefficient_ring(CLOSED_VARIABLES)
    subs = {name: loc.t[j] for j, name in enumerate(t_names(N), start=1)}
    mats = build_Y_Z_K_Rtilde(N)

    def lift(C: CMatrix) -> NCMatrix:
        return NCMatrix.from_cmatrix(C, alphabet, ring, subs)

    K12 = lift(mats.K_at("z1"))
    K21 = lift(swap_legs(mats.K_at("z2")))
    R_tilde = lift(mats.R_tilde)
    R = NCMatrix.from_cmatrix(spectral_R(N, "z1", "z2", ring, model.reading), alphabet, ring)

    identity = NCMatrix.identity(N, alphabet, ring)
    S, sigma = loc.S.with_domain(ring), loc.sigma.with_domain(ring)
    graded = model.L.coeffs
    L_z1 = sum_graded(graded, alphabet, ring, "z1")
    L_z2 = sum_graded(graded, alphabet, ring, "z2")
    M1 = (S @ L_z1 @ sigma).kron(identity)
    M2 = identity.kron(S @ L_z2 @ sigma)
    L1, L2 = L_z1.kron(identity), identity.kron(L_z2)

    S_hat12 = loc.S_hat.with_domain(ring)
    S_hat21 = S_hat12.conjugate_by_permutation(leg_permutation(N, (1, 0)))
    right = S.kron(identity) @ S_hat21
    left = identity.kron(S) @ S_hat12

    targets: dict[str, NCPoly] = {}
    if "A" in identities:
        A = R_tilde @ K12 @ M1 @ K21 @ M2 @ right - left @ R @ L1 @ L2
        targets.update(_targets_from_matrix("A", A, split=True, names=CLOSED_VARIABLES))
    if "B" in identities:
        B = K21 @ M2 @ K12 @ M1 @ R_tilde @ right - left @ L2 @ L1 @ R
        targets.update(_targets_from_matrix("B", B, split=True, names=CLOSED_VARIABLES))
    return targets


def sum_graded(
    coeffs: list[NCMatrix], alphabet: Alphabet, ring: PolyRing, variable: str
) -> NCMatrix:
    """sum_a coeffs[a] variable^a over ``alphabet`` and ``ring``."""
    gen = ring.gens[list(map(str, ring.symbols)).index(variable)]
    total = NCMatrix.zeros(coeffs[0].rows, coeffs[0].cols, alphabet, ring)
    for a, coeff in enumerate(coeffs):
        total = total + coeff.with_alphabet(alphabet).with_domain(ring).scale(gen**a)
    return total


def check_closed_relation(
    model: QuantumModel,
    red: ReductionData,
    degree_bound: int | None = None,
    loc: LocalizedReduction | None = None,
    identities: tuple[str, ...] = ("A", "B"),
) -> CheckReport:
    """Closed commutation relations for M(z) in the localized algebra.

    Coefficients already live in Q(q^{1/2}), so the q-denominators of K need
    no separate clearing before membership.
    """
    loc = loc or localize(red)
    report = CheckReport("closed", "closed commutation relations for M(z)")
    report.notes["s_hat_reading"] = red.s_hat_reading
    return verify_targets(
        MembershipChecker(loc.rels, degree_bound),
        closed_relation_targets(model, loc, identities),
        report,
        lambda target: cleared_classical_residue(target, loc.S),
    )
