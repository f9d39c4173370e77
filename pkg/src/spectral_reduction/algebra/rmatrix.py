"""C-number matrices of the trigonometric gl_N family and their identities.

Builds matrix units, the permutation P, the constant and spectral R-matrices,
the classical r-matrix (as numerator over ``z - zp``), and the reduction
matrices V, U, C12, Y12, Z12(z), K12(z) and R~(z1, z2).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.rings import PolyElement, PolyRing

from spectral_reduction.algebra.matrices import CMatrix, first_difference, leg_permutation
from spectral_reduction.algebra.qscalars import (
    Q,
    Q_INV,
    Q_MINUS_QINV,
    K,
    S_HALF,
    classical_ring,
    coefficient_ring,
    differentiate_poly_at_classical_point,
    ring_variables,
    specialize_poly,
)
from spectral_reduction.exceptions import (
    IndexOutOfRangeError,
    InverseMismatchError,
    MatrixError,
    ModelError,
)
from spectral_reduction.logging import get_logger

logger = get_logger(__name__)

Reading = Literal["interpreted", "literal"]

SPECTRAL_VARIABLES = ("z", "zp")
YBE_VARIABLES = ("z1", "z2", "z3")


def t_names(N: int) -> tuple[str, ...]:
    return tuple(f"t{j}" for j in range(1, N))


def reduction_variables(N: int) -> tuple[str, ...]:
    """Variables of the reduction matrices: spectral points then t_1..t_{N-1}."""
    return ("z", "z1", "z2", *t_names(N))


def _require_size(N: int) -> None:
    if N < 2:
        raise ModelError(f"N must be at least 2, got {N}")


def _gen(ring: PolyRing, name: str) -> PolyElement:
    return ring.gens[ring_variables(ring).index(name)]


def unit_matrix(N: int, i: int, j: int, ring: PolyRing | None = None) -> CMatrix:
    """Matrix unit E^{ij} (1-based indices)."""
    if not (1 <= i <= N and 1 <= j <= N):
        raise IndexOutOfRangeError(f"E^{{{i}{j}}} outside 1..{N}")
    ring = ring or coefficient_ring(SPECTRAL_VARIABLES)
    return CMatrix(N, N, ring, "single", N, {(i - 1, j - 1): ring.one})


def permutation_matrix(N: int, ring: PolyRing | None = None) -> CMatrix:
    """P = sum_{ij} E^{ij} (x) E^{ji}."""
    ring = ring or coefficient_ring(SPECTRAL_VARIABLES)
    entries = {(i * N + j, j * N + i): ring.one for i, j in product(range(N), repeat=2)}
    return CMatrix(N * N, N * N, ring, "tensor2", N, entries)


def swap_legs(X: CMatrix) -> CMatrix:
    """X_21 = P X_12 P."""
    if X.space != "tensor2":
        raise MatrixError("Leg swap needs a tensor2 matrix")
    return X.conjugate_by_permutation(leg_permutation(X.N, (1, 0)))


def constant_R(N: int, reading: Reading = "interpreted", ring: PolyRing | None = None) -> CMatrix:
    """Constant R-matrix R_12(q).

    ``interpreted``: sum_{ij} q^{delta_ij} E^{ii}(x)E^{jj} + (q-q^-1) sum_{j>i} E^{ji}(x)E^{ij}.
    ``literal``: sum_j q^{E^{jj}}(x)q^{E^{jj}} with q^{E^{jj}} = I + (q-1)E^{jj}, plus the
    same off-diagonal part.
    """
    _require_size(N)
    ring = ring or coefficient_ring(SPECTRAL_VARIABLES)
    entries: dict[tuple[int, int], PolyElement] = {}

    def add(key: tuple[int, int], value: object) -> None:
        total = entries.get(key, ring.zero) + ring.ground_new(value)
        if total:
            entries[key] = total
        else:
            entries.pop(key, None)

    if reading == "interpreted":
        for i, j in product(range(N), repeat=2):
            add((i * N + j, i * N + j), Q if i == j else K.one)
    elif reading == "literal":
        for jj in range(N):
            # q^{E^{jj}} is diagonal with q at jj and 1 elsewhere
            for a, b in product(range(N), repeat=2):
                factor = (Q if a == jj else K.one) * (Q if b == jj else K.one)
                add((a * N + b, a * N + b), factor)
    else:
        raise ValueError(f"Unknown reading: {reading}")
    for i in range(N):
        for j in range(i + 1, N):
            # E^{ji} (x) E^{ij}: row (j, i), column (i, j)
            add((j * N + i, i * N + j), Q_MINUS_QINV)
    return CMatrix(N * N, N * N, ring, "tensor2", N, entries)


def invert_constant(X: CMatrix) -> CMatrix:
    """Exact inverse of a matrix with constant entries over Q(q^{1/2})."""
    zero_monom = X.ring.zero_monom
    rows = []
    for i in range(X.rows):
        row = []
        for j in range(X.cols):
            poly = X.get(i, j)
            if any(monom != zero_monom for monom in poly.itermonoms()):
                raise MatrixError("invert_constant needs constant entries")
            row.append(poly.get(zero_monom, K.zero))
        rows.append(row)
    try:
        inverse = DomainMatrix(rows, (X.rows, X.cols), K).inv()
    except DMNonInvertibleMatrixError as e:
        raise MatrixError(f"Matrix is singular: {e}") from e
    entries = {}
    for i, row in enumerate(inverse.to_list()):
        for j, value in enumerate(row):
            if value:
                entries[(i, j)] = X.ring.ground_new(value)
    return CMatrix(X.rows, X.cols, X.ring, X.space, X.N, entries)


def spectral_R(
    N: int,
    z_sym: str = "z",
    zp_sym: str = "zp",
    ring: PolyRing | None = None,
    reading: Reading = "interpreted",
) -> CMatrix:
    """R(z, z') = z R_12(q) - z' R_21(q)^{-1}."""
    ring = ring or coefficient_ring(SPECTRAL_VARIABLES)
    R12 = constant_R(N, reading, ring)
    R21_inv = invert_constant(swap_legs(R12))
    return R12.scale(_gen(ring, z_sym)) - R21_inv.scale(_gen(ring, zp_sym))


@dataclass(frozen=True)
class YBEReport:
    """Outcome of a Yang-Baxter check."""

    N: int
    reading: Reading
    passed: bool
    offending_entry: tuple[int, int] | None = None
    residual: str | None = None


def check_ybe(N: int, reading: Reading = "interpreted") -> YBEReport:
    """Verify R12(z1,z2) R13(z1,z3) R23(z2,z3) = R23(z2,z3) R13(z1,z3) R12(z1,z2)."""
    ring = coefficient_ring(YBE_VARIABLES)
    identity = CMatrix.identity(N, ring)
    swap23 = leg_permutation(N, (0, 2, 1))
    R12 = spectral_R(N, "z1", "z2", ring, reading).kron(identity)
    R13 = spectral_R(N, "z1", "z3", ring, reading).kron(identity).conjugate_by_permutation(swap23)
    R23 = identity.kron(spectral_R(N, "z2", "z3", ring, reading))
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    diff = first_difference(lhs, rhs)
    if diff is None:
        logger.info(f"YBE holds for N={N} ({reading})")
        return YBEReport(N, reading, True)
    i, j, value = diff
    logger.info(f"YBE fails for N={N} ({reading}) at ({i}, {j})")
    return YBEReport(N, reading, False, (i, j), str(value))


def select_default_reading(N: int = 3) -> Reading:
    """Pick the constant-R reading that satisfies the Yang-Baxter equation."""
    for reading in ("interpreted", "literal"):
        if check_ybe(N, reading).passed:
            return reading
    raise MatrixError("No constant R-matrix reading satisfies the Yang-Baxter equation")


@dataclass(frozen=True)
class ClassicalR:
    """Classical r-matrix as ``numerator / denominator`` with denominator ``z - zp``."""

    numerator: CMatrix
    denominator: PolyElement


def classical_r(N: int, ring: PolyRing | None = None) -> ClassicalR:
    """Classical r(z, z') cleared of its common denominator (z - z')."""
    _require_size(N)
    ring = ring or coefficient_ring(SPECTRAL_VARIABLES)
    z, zp = _gen(ring, "z"), _gen(ring, "zp")
    entries: dict[tuple[int, int], PolyElement] = {}
    for i in range(N):
        entries[(i * N + i, i * N + i)] = (z + zp) * ring.ground_new(K.one / 2)
    for i, j in product(range(N), repeat=2):
        if j > i:
            entries[(j * N + i, i * N + j)] = z
        elif j < i:
            entries[(j * N + i, i * N + j)] = zp
    return ClassicalR(CMatrix(N * N, N * N, ring, "tensor2", N, entries), z - zp)


def classical_r_antisymmetry(N: int) -> bool:
    """Whether r_12(z,z') + r_21(z',z) vanishes (recorded, not asserted)."""
    r = classical_r(N)
    ring = r.numerator.ring
    z, zp = _gen(ring, "z"), _gen(ring, "zp")
    flipped = swap_legs(r.numerator.substitute({"z": zp, "zp": z}))
    # r_21(z',z) carries denominator (z'-z) = -(z-z')
    return (r.numerator - flipped).is_zero()


@dataclass(frozen=True)
class ClassicalLimitReport:
    """Result of matching d/dγ R at γ=0 against the classical r-matrix."""

    N: int
    passed: bool
    c_over_i: Fraction | None
    c0_over_i: str | None
    residual: str | None = None


def classical_limit_check(N: int) -> ClassicalLimitReport:
    """Find c, c0 with (z-z')^{-1} ∂_γ R|_{γ=0} = c·r + c0·I.

    Cleared of denominators this reads ∂_γ R = c·numer(r) + c0·(z-z')·I. All
    γ-derivatives are purely imaginary, so c and c0 are reported as multiples of i.
    """
    R = spectral_R(N)
    r = classical_r(N)
    real_ring = classical_ring(SPECTRAL_VARIABLES)
    dR = R.map_entries(differentiate_poly_at_classical_point, real_ring)
    r_num = r.numerator.map_entries(specialize_poly, real_ring)
    denominator = specialize_poly(r.denominator)

    c = None
    for (i, j), value in r_num.nonzero():
        candidate, remainder = divmod(dR.get(i, j), value)
        if not remainder and candidate.is_ground:
            c = candidate
            break
    if c is None:
        return ClassicalLimitReport(N, False, None, None, "no entry fixes c")

    residual = dR - r_num.scale(c)
    c0, remainder = divmod(residual.get(0, 0), denominator)
    expected = CMatrix.identity(N, real_ring, "tensor2").scale(c0 * denominator)
    difference = first_difference(residual, expected)
    c_value = c.LC if c else real_ring.domain.zero
    c_fraction = Fraction(int(c_value.numerator), int(c_value.denominator))
    if remainder or difference is not None:
        text = str(remainder) if remainder else str(difference)
        return ClassicalLimitReport(N, False, c_fraction, str(c0), text)
    logger.info(f"Classical limit N={N}: c = {c_fraction}i, c0 = {c0}i")
    return ClassicalLimitReport(N, True, c_fraction, str(c0))


def coinciding_point_degeneration(N: int, reading: Reading = "interpreted") -> bool:
    """R(z, z) is proportional to P: R(z,z) = z(q - q^-1) P."""
    R = spectral_R(N, reading=reading)
    ring = R.ring
    z = _gen(ring, "z")
    at_diagonal = R.substitute({"zp": z})
    expected = permutation_matrix(N, ring).scale(z * ring.ground_new(Q_MINUS_QINV))
    return at_diagonal.equals(expected)


def hecke_identity(N: int, reading: Reading = "interpreted") -> bool:
    """R_12(q) - R_21(q)^{-1} = (q - q^-1) P."""
    R12 = constant_R(N, reading)
    R21_inv = invert_constant(swap_legs(R12))
    return (R12 - R21_inv).equals(permutation_matrix(N).scale(Q_MINUS_QINV))


def unitarity_holds(N: int, reading: Reading = "interpreted") -> bool:
    """R(z, z') R_21(z', z) is a scalar multiple of the identity."""
    ring = coefficient_ring(SPECTRAL_VARIABLES)
    R = spectral_R(N, "z", "zp", ring, reading)
    R21_flipped = swap_legs(spectral_R(N, "zp", "z", ring, reading))
    product_ = R @ R21_flipped
    scalar = product_.get(0, 0)
    return product_.equals(CMatrix.identity(N, ring, "tensor2").scale(scalar))


def build_V(N: int, ring: PolyRing | None = None) -> CMatrix:
    """V = sum_{i=2}^{N-1} E^{i,i+1}; nilpotent with V^{N-1} = 0."""
    _require_size(N)
    ring = ring or coefficient_ring(t_names(N))
    return CMatrix(N, N, ring, "single", N, {(i - 1, i): ring.one for i in range(2, N)})


def build_U(
    N: int, ring: PolyRing | None = None, t: list[PolyElement] | None = None
) -> CMatrix:
    """Companion-type matrix U with row 2 = (0, -t_1, ..., -t_{N-1}).

    ``t`` overrides the symbols t_1..t_{N-1} with given ring elements.
    """
    _require_size(N)
    ring = ring or coefficient_ring(t_names(N))
    values = t if t is not None else [_gen(ring, name) for name in t_names(N)]
    entries: dict[tuple[int, int], PolyElement] = {}
    for j, tj in enumerate(values, start=1):
        if tj:
            entries[(1, j)] = -tj
    for i in range(3, N + 1):
        entries[(i - 1, i - 2)] = ring.one
    return CMatrix(N, N, ring, "single", N, entries)


def companion_block(U: CMatrix) -> list[list[PolyElement]]:
    """U~: U with its first row and column removed."""
    return [[U.get(i, j) for j in range(1, U.cols)] for i in range(1, U.rows)]


def build_C12(N: int, ring: PolyRing | None = None, extra_terms: int = 0) -> CMatrix:
    """C_12 = (I - E^{11}) (x) I + sum_j V^j (x) U^j, truncated at j = N - 2.

    ``extra_terms`` appends further powers past the nilpotency bound.
    """
    _require_size(N)
    ring = ring or coefficient_ring(t_names(N))
    identity = CMatrix.identity(N, ring)
    V, U = build_V(N, ring), build_U(N, ring)
    C = (identity - unit_matrix(N, 1, 1, ring)).kron(identity)
    Vj, Uj = identity, identity
    for _ in range(1, N - 1 + extra_terms):
        Vj, Uj = Vj @ V, Uj @ U
        C = C + Vj.kron(Uj)
    return C


@dataclass(frozen=True)
class ReductionMatrices:
    """Y_12, its inverse, Z_12(z), K_12(z) and R~(z1, z2) on a shared ring."""

    N: int
    C12: CMatrix
    Y12: CMatrix
    Y12_inv: CMatrix
    Z12: CMatrix
    K12: CMatrix
    R_tilde: CMatrix

    def Z_at(self, point: str) -> CMatrix:
        ring = self.Z12.ring
        return self.Z12.substitute({"z": _gen(ring, point)})

    def K_at(self, point: str) -> CMatrix:
        ring = self.K12.ring
        return self.K12.substitute({"z": _gen(ring, point)})


def projector_holds(N: int, ring: PolyRing | None = None) -> bool:
    """(C_12 (I - P))^2 = C_12 (I - P)."""
    ring = ring or coefficient_ring(t_names(N))
    projector = build_C12(N, ring) @ (
        CMatrix.identity(N, ring, "tensor2") - permutation_matrix(N, ring)
    )
    return (projector @ projector).equals(projector)


def build_Y_Z_K_Rtilde(N: int, ring: PolyRing | None = None) -> ReductionMatrices:
    """Build Y_12, Y_12^{-1}, Z_12(z), K_12(z), R~(z1, z2).

    Raises:
        InverseMismatchError: If the closed inverse formula is not a two-sided inverse
            or differs from the exact inverse of Y_12.
    """
    _require_size(N)
    ring = ring or coefficient_ring(reduction_variables(N))
    identity = CMatrix.identity(N, ring)
    I2 = CMatrix.identity(N, ring, "tensor2")
    P = permutation_matrix(N, ring)
    C12 = build_C12(N, ring)
    projector = C12 @ (I2 - P)

    Y12 = I2.scale(Q) - projector.scale(Q_MINUS_QINV)
    Y12_inv = I2.scale(Q_INV) + projector.scale(Q_MINUS_QINV)
    for product_ in (Y12 @ Y12_inv, Y12_inv @ Y12):
        mismatch = first_difference(product_, I2)
        if mismatch is not None:
            raise InverseMismatchError(
                f"Closed inverse of Y_12 fails at entry {mismatch[:2]}: {mismatch[2]}"
            )
    mismatch = first_difference(Y12_inv, invert_constant(Y12))
    if mismatch is not None:
        raise InverseMismatchError(
            f"Closed inverse of Y_12 differs from the exact inverse at entry {mismatch[:2]}"
        )

    z = _gen(ring, "z")
    U = build_U(N, ring)
    E_N1 = unit_matrix(N, N, 1, ring)
    Z12 = I2 - (identity.kron(U) @ C12 @ E_N1.kron(identity)).scale(
        z * ring.ground_new(Q_MINUS_QINV)
    )
    K12 = Y12_inv @ Z12
    Y21_inv = swap_legs(Y12_inv)
    R_tilde = Y12.scale(_gen(ring, "z1")) - Y21_inv.scale(_gen(ring, "z2"))
    logger.debug(f"Reduction matrices built for N={N}")
    return ReductionMatrices(N, C12, Y12, Y12_inv, Z12, K12, R_tilde)


__all__ = [
    "S_HALF",
    "ClassicalR",
    "ReductionMatrices",
    "YBEReport",
    "build_C12",
    "build_U",
    "build_V",
    "build_Y_Z_K_Rtilde",
    "check_ybe",
    "classical_limit_check",
    "classical_r",
    "constant_R",
    "permutation_matrix",
    "spectral_R",
    "swap_legs",
    "unit_matrix",
]
