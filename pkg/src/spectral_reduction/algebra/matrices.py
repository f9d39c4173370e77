"""Sparse matrices with commutative polynomial entries (C-number matrices).

Tensor-space layout is fixed once: for ``tensor2(N)`` the basis index of
slot-1 index ``i`` and slot-2 index ``j`` (both 0-based) is ``i*N + j``;
``tensor3(N)`` extends this row-major to three slots.
"""

from collections import defaultdict
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import product
from typing import Literal

from sympy.polys.rings import PolyElement, PolyRing

from spectral_reduction.algebra.qscalars import CPoly, ScalarLike, to_field
from spectral_reduction.exceptions import (
    IndexOutOfRangeError,
    MatrixError,
    SpaceTagMismatchError,
    VariableMismatchError,
)

Space = Literal["single", "tensor2", "tensor3"]
Entries = Mapping[tuple[int, int], PolyElement]

_SLOTS: dict[Space, int] = {"single": 1, "tensor2": 2, "tensor3": 3}
_BY_SLOTS: dict[int, Space] = {1: "single", 2: "tensor2", 3: "tensor3"}


@dataclass(frozen=True, eq=False)
class CMatrix:
    """Immutable sparse matrix over a commutative polynomial ring.

    ``entries`` never stores zeros. ``space`` and ``N`` record which tensor
    factorization of the index space is meant.
    """

    rows: int
    cols: int
    ring: PolyRing
    space: Space
    N: int
    entries: Entries = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise MatrixError("Matrix dimensions must be positive")
        if self.space != "single" and self.rows != self.N ** _SLOTS[self.space]:
            raise MatrixError(f"{self.space}({self.N}) needs {self.N ** _SLOTS[self.space]} rows")

    # Construction

    @classmethod
    def zeros(cls, N: int, ring: PolyRing, space: Space = "single") -> "CMatrix":
        dim = N ** _SLOTS[space]
        return cls(dim, dim, ring, space, N, {})

    @classmethod
    def identity(cls, N: int, ring: PolyRing, space: Space = "single") -> "CMatrix":
        dim = N ** _SLOTS[space]
        return cls(dim, dim, ring, space, N, {(i, i): ring.one for i in range(dim)})

    @classmethod
    def from_function(
        cls,
        N: int,
        ring: PolyRing,
        fn: Callable[[int, int], PolyElement | ScalarLike],
        space: Space = "single",
    ) -> "CMatrix":
        dim = N ** _SLOTS[space]
        entries: dict[tuple[int, int], PolyElement] = {}
        for i, j in product(range(dim), repeat=2):
            value = fn(i, j)
            poly = value if isinstance(value, PolyElement) else ring.ground_new(to_field(value))
            if poly:
                entries[(i, j)] = poly
        return cls(dim, dim, ring, space, N, entries)

    # Access

    @property
    def dim(self) -> int:
        return self.rows

    def get(self, i: int, j: int) -> PolyElement:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexOutOfRangeError(f"Entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries.get((i, j), self.ring.zero)

    def entry(self, i: int, j: int) -> CPoly:
        return CPoly(self.get(i, j))

    def nonzero(self) -> Iterator[tuple[tuple[int, int], PolyElement]]:
        yield from sorted(self.entries.items())

    def to_rows(self) -> list[list[PolyElement]]:
        return [[self.get(i, j) for j in range(self.cols)] for i in range(self.rows)]

    # Arithmetic

    def _check(self, other: "CMatrix") -> None:
        if self.ring != other.ring:
            raise VariableMismatchError(
                tuple(map(str, self.ring.symbols)), tuple(map(str, other.ring.symbols))
            )
        if (self.space, self.N) != (other.space, other.N):
            raise SpaceTagMismatchError(
                f"{self.space}({self.N}) combined with {other.space}({other.N})"
            )

    def _combine(self, other: "CMatrix", sign: int) -> "CMatrix":
        self._check(other)
        entries = dict(self.entries)
        for key, value in other.entries.items():
            total = entries.get(key, self.ring.zero) + (value if sign > 0 else -value)
            if total:
                entries[key] = total
            else:
                entries.pop(key, None)
        return CMatrix(self.rows, self.cols, self.ring, self.space, self.N, entries)

    def __add__(self, other: "CMatrix") -> "CMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "CMatrix":
        return self.scale(-1)

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        self._check(other)
        by_row: dict[int, list[tuple[int, PolyElement]]] = defaultdict(list)
        for (k, j), b in other.entries.items():
            by_row[k].append((j, b))
        acc: dict[tuple[int, int], PolyElement] = {}
        zero = self.ring.zero
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), zero) + a * b
        return CMatrix(
            self.rows,
            other.cols,
            self.ring,
            self.space,
            self.N,
            {key: value for key, value in acc.items() if value},
        )

    def __pow__(self, power: int) -> "CMatrix":
        if power < 0:
            raise MatrixError("Negative matrix powers are not supported")
        result = CMatrix.identity(self.N, self.ring, self.space)
        for _ in range(power):
            result = result @ self
        return result

    def scale(self, factor: PolyElement | ScalarLike) -> "CMatrix":
        lifted = (
            factor if isinstance(factor, PolyElement) else self.ring.ground_new(to_field(factor))
        )
        entries = {key: value * lifted for key, value in self.entries.items()}
        return CMatrix(
            self.rows,
            self.cols,
            self.ring,
            self.space,
            self.N,
            {key: value for key, value in entries.items() if value},
        )

    def kron(self, other: "CMatrix") -> "CMatrix":
        """Tensor product ``self ⊗ other`` with row-major slot ordering."""
        if self.ring != other.ring:
            raise VariableMismatchError(
                tuple(map(str, self.ring.symbols)), tuple(map(str, other.ring.symbols))
            )
        if self.N != other.N:
            raise SpaceTagMismatchError("Tensor factors must share N")
        slots = _SLOTS[self.space] + _SLOTS[other.space]
        if slots > 3:
            raise SpaceTagMismatchError("Only up to three tensor slots are supported")
        entries: dict[tuple[int, int], PolyElement] = {}
        for (i1, j1), a in self.entries.items():
            for (i2, j2), b in other.entries.items():
                value = a * b
                if value:
                    entries[(i1 * other.rows + i2, j1 * other.cols + j2)] = value
        dim = self.rows * other.rows
        return CMatrix(dim, dim, self.ring, _BY_SLOTS[slots], self.N, entries)

    def conjugate_by_permutation(self, perm: list[int]) -> "CMatrix":
        """Return ``P A P^{-1}`` for the basis permutation ``e_k -> e_perm[k]``."""
        entries = {(perm[i], perm[j]): value for (i, j), value in self.entries.items()}
        return CMatrix(self.rows, self.cols, self.ring, self.space, self.N, entries)

    def map_entries(self, fn: Callable[[PolyElement], PolyElement], ring: PolyRing) -> "CMatrix":
        entries = {key: fn(value) for key, value in self.entries.items()}
        return CMatrix(
            self.rows,
            self.cols,
            ring,
            self.space,
            self.N,
            {key: value for key, value in entries.items() if value},
        )

    def to_ring(self, ring: PolyRing) -> "CMatrix":
        """Embed into a ring whose variables include this one's."""
        if ring == self.ring:
            return self
        return self.map_entries(lambda p: p.set_ring(ring), ring)

    def substitute(self, replacements: dict[str, PolyElement | ScalarLike]) -> "CMatrix":
        """Simultaneously substitute polynomials for variables."""
        gens = {str(s): g for s, g in zip(self.ring.symbols, self.ring.gens, strict=True)}
        pairs = [
            (
                gens[name],
                value
                if isinstance(value, PolyElement)
                else self.ring.ground_new(to_field(value)),
            )
            for name, value in replacements.items()
        ]
        return self.map_entries(lambda p: p.compose(pairs), self.ring)

    # Comparison

    def is_zero(self) -> bool:
        return not self.entries

    def equals(self, other: "CMatrix") -> bool:
        return first_difference(self, other) is None

    def to_text(self) -> str:
        """Canonical text form used in reports and golden files."""
        header = f"# cmatrix v1 {self.space}({self.N}) {self.rows}x{self.cols} vars={','.join(map(str, self.ring.symbols))}"
        lines = [header] + [f"{i} {j}: {value}" for (i, j), value in self.nonzero()]
        return "\n".join(lines)


def first_difference(a: CMatrix, b: CMatrix) -> tuple[int, int, PolyElement] | None:
    """Return the first (row-major) entry where ``a`` and ``b`` differ."""
    diff = a - b
    for (i, j), value in diff.nonzero():
        return i, j, value
    return None


def tensor_index(N: int, *slots: int) -> int:
    """Row-major basis index of 0-based slot indices."""
    index = 0
    for s in slots:
        index = index * N + s
    return index


def leg_permutation(N: int, order: tuple[int, ...]) -> list[int]:
    """Basis permutation sending slot tuple ``(i_0, i_1, ...)`` to its reordering.

    ``order[k]`` names the source slot placed at position ``k``.
    """
    slots = len(order)
    perm = [0] * N**slots
    for idx in product(range(N), repeat=slots):
        perm[tensor_index(N, *idx)] = tensor_index(N, *(idx[o] for o in order))
    return perm
