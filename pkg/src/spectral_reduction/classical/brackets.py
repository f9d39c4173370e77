"""r-matrix Poisson brackets on the coefficients of l(z).

{l(z) (x), l(z')} = [r(z,z'), l(z) (x) l(z')] is multiplied by (z - z'), the
right-hand side is divided exactly by (z - z') and the coefficients of
z^a z'^b give the generator brackets.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Literal

from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from spectral_reduction.algebra.qscalars import classical_ring, specialize_poly
from spectral_reduction.algebra.rmatrix import classical_r
from spectral_reduction.exceptions import BracketConsistencyError, ModelError
from spectral_reduction.logging import get_logger
from spectral_reduction.noncommutative.alphabet import mu_exists

logger = get_logger(__name__)

Shape = Literal["classical", "quantum"]
Position = tuple[int, int, int]

SPECTRAL = ("z", "zp")


def shape_positions(N: int, n: int, shape: Shape = "classical", degenerate: bool = False) -> tuple[Position, ...]:
    """Coefficient positions (a, i, j) of l(z), 1-based, sorted.

    ``classical``: l^+ strictly upper of degree n-1, l^0 diagonal of degree n
    and z l^- strictly lower. ``quantum``: full L^{(a)} for a < n and the
    leading coefficient lower triangular without its (1,1) entry.
    ``degenerate`` drops l^{(n)}_{11} from the classical shape.
    """
    if N < 2 or n < 1:
        raise ModelError(f"Need N >= 2 and n >= 1, got N={N}, n={n}")
    positions: list[Position] = []
    for i, j in product(range(1, N + 1), repeat=2):
        if shape == "classical":
            if i < j:
                degrees = range(n)
            elif i == j:
                degrees = range(n + 1)
            else:
                degrees = range(1, n + 1)
            positions += [(a, i, j) for a in degrees if not (degenerate and (a, i, j) == (n, 1, 1))]
        elif shape == "quantum":
            positions += [(a, i, j) for a in range(n)]
            if mu_exists(i, j):
                positions.append((n, i, j))
        else:
            raise ValueError(f"Unknown shape: {shape}")
    return tuple(sorted(positions))


def generator_name(position: Position) -> str:
    a, i, j = position
    return f"l{a}_{i}{j}"


@dataclass(frozen=True)
class ClassicalModel:
    """Generators of l(z) and their bracket table as polynomials over Q."""

    N: int
    n: int
    shape: Shape
    positions: tuple[Position, ...]
    ring: PolyRing
    table: dict[tuple[int, int], PolyElement] = field(repr=False)

    @property
    def gens(self) -> tuple[PolyElement, ...]:
        return tuple(self.ring.gens)

    def index(self, position: Position) -> int:
        return self.positions.index(position)

    def generator(self, position: Position) -> PolyElement:
        return self.ring.gens[self.index(position)]

    def bracket_of(self, p: int, q: int) -> PolyElement:
        return self.table.get((p, q), self.ring.zero)

    def lax_entry(self, i: int, j: int, variable: PolyElement, ring: PolyRing) -> PolyElement:
        """l_ij(variable) over ``ring``, which must contain the generator names."""
        total = ring.zero
        for k, (a, pi, pj) in enumerate(self.positions):
            if (pi, pj) == (i, j):
                total += self.ring.gens[k].set_ring(ring) * variable**a
        return total


def _split_spectral(poly: PolyElement, ngens: int) -> dict[tuple[int, int], dict[tuple[int, ...], object]]:
    parts: dict[tuple[int, int], dict[tuple[int, ...], object]] = {}
    for monom, coeff in poly.terms():
        parts.setdefault((monom[ngens], monom[ngens + 1]), {})[monom[:ngens]] = coeff
    return parts


def build_bracket_table(
    N: int, n: int, shape: Shape = "classical", degenerate: bool = False, strict: bool = True
) -> ClassicalModel:
    """Solve {l(z) (x), l(z')} = [r(z,z'), l(z) (x) l(z')] for all generator brackets.

    Raises:
        BracketConsistencyError: If (z - z') does not divide the right-hand side,
            or, with ``strict``, a bracket lands on a coefficient outside the shape.
    """
    positions = shape_positions(N, n, shape, degenerate)
    names = tuple(generator_name(p) for p in positions)
    ring = classical_ring(names)
    big = classical_ring(names + SPECTRAL)
    z, zp = big.gens[-2], big.gens[-1]
    model = ClassicalModel(N, n, shape, positions, ring, {})

    lz = [[model.lax_entry(i, j, z, big) for j in range(1, N + 1)] for i in range(1, N + 1)]
    lzp = [[model.lax_entry(i, j, zp, big) for j in range(1, N + 1)] for i in range(1, N + 1)]
    r = classical_r(N)
    r_num = {key: specialize_poly(value).set_ring(big) for key, value in r.numerator.nonzero()}

    def tensor(row: int, col: int) -> PolyElement:
        (i, k), (j, l) = divmod(row, N), divmod(col, N)
        return lz[i][j] * lzp[k][l]

    size = N * N
    X = {(row, col): tensor(row, col) for row, col in product(range(size), repeat=2)}
    r_rows: dict[int, list[tuple[int, PolyElement]]] = {}
    r_cols: dict[int, list[tuple[int, PolyElement]]] = {}
    for (row, col), value in r_num.items():
        r_rows.setdefault(row, []).append((col, value))
        r_cols.setdefault(col, []).append((row, value))

    index = {p: k for k, p in enumerate(positions)}
    table: dict[tuple[int, int], PolyElement] = {}
    ngens = len(names)
    denominator = z - zp
    for row, col in product(range(size), repeat=2):
        commutator = sum((v * X[(k, col)] for k, v in r_rows.get(row, [])), big.zero) - sum(
            (X[(row, k)] * v for k, v in r_cols.get(col, [])), big.zero
        )
        if not commutator:
            continue
        try:
            quotient = commutator.exquo(denominator)
        except ExactQuotientFailed as e:
            raise BracketConsistencyError(f"(z - z') does not divide component ({row},{col})") from e
        (i, k), (j, l) = divmod(row, N), divmod(col, N)
        for (a, b), coeffs in _split_spectral(quotient, ngens).items():
            left, right = (a, i + 1, j + 1), (b, k + 1, l + 1)
            if left not in index or right not in index:
                if strict:
                    raise BracketConsistencyError(
                        f"Bracket lands outside the {shape} shape: {{{generator_name(left)}, {generator_name(right)}}}"
                    )
                continue
            table.setdefault((index[left], index[right]), ring.from_dict(coeffs))
    logger.info(f"Bracket table N={N} n={n} ({shape}): {len(names)} generators, {len(table)} nonzero pairs")
    return ClassicalModel(N, n, shape, positions, ring, table)


def poisson_bracket(f: PolyElement, g: PolyElement, model: ClassicalModel) -> PolyElement:
    """Leibniz extension of the generator table."""
    ring = model.ring
    f, g = f.set_ring(ring), g.set_ring(ring)
    total = ring.zero
    if f.is_ground or g.is_ground:
        return total
    df = {p: d for p, x in enumerate(ring.gens) if (d := f.diff(x))}
    dg = {q: d for q, x in enumerate(ring.gens) if (d := g.diff(x))}
    for p, fp in df.items():
        for q, gq in dg.items():
            bracket = model.bracket_of(p, q)
            if bracket:
                total += fp * gq * bracket
    return total


def antisymmetry_violations(model: ClassicalModel) -> list[tuple[str, str]]:
    violations = []
    for (p, q), value in model.table.items():
        if value + model.bracket_of(q, p):
            violations.append((str(model.ring.gens[p]), str(model.ring.gens[q])))
    return violations


def jacobi_violations(model: ClassicalModel) -> list[tuple[str, str, str]]:
    """Generator triples on which the Jacobi identity fails (exhaustive)."""
    gens = model.gens
    violations = []
    for x, y, w in combinations(gens, 3):
        total = (
            poisson_bracket(x, poisson_bracket(y, w, model), model)
            + poisson_bracket(y, poisson_bracket(w, x, model), model)
            + poisson_bracket(w, poisson_bracket(x, y, model), model)
        )
        if total:
            violations.append((str(x), str(y), str(w)))
    logger.debug(f"Jacobi: {len(violations)} violations")
    return violations


def replay_identity(model: ClassicalModel) -> bool:
    """Rebuild (z - z') {l (x), l'} from the table and compare with [r_num, l (x) l']."""
    N = model.N
    names = tuple(str(s) for s in model.ring.symbols)
    big = classical_ring(names + SPECTRAL)
    z, zp = big.gens[-2], big.gens[-1]
    lz = [[model.lax_entry(i, j, z, big) for j in range(1, N + 1)] for i in range(1, N + 1)]
    lzp = [[model.lax_entry(i, j, zp, big) for j in range(1, N + 1)] for i in range(1, N + 1)]
    r_num = {key: specialize_poly(v).set_ring(big) for key, v in classical_r(N).numerator.nonzero()}
    size = N * N

    def X(row: int, col: int) -> PolyElement:
        (i, k), (j, l) = divmod(row, N), divmod(col, N)
        return lz[i][j] * lzp[k][l]

    for row, col in product(range(size), repeat=2):
        (i, k), (j, l) = divmod(row, N), divmod(col, N)
        expected = big.zero
        for (r1, c1), v in r_num.items():
            if r1 == row:
                expected += v * X(c1, col)
            if c1 == col:
                expected -= X(row, r1) * v
        rebuilt = big.zero
        for p, (a, pi, pj) in enumerate(model.positions):
            if (pi, pj) != (i + 1, j + 1):
                continue
            for q, (b, qi, qj) in enumerate(model.positions):
                if (qi, qj) != (k + 1, l + 1):
                    continue
                value = model.bracket_of(p, q)
                if value:
                    rebuilt += value.set_ring(big) * z**a * zp**b
        if rebuilt * (z - zp) != expected:
            return False
    return True
