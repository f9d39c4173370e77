"""Generator alphabet of the quantum L-operator algebra."""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple

from spectral_reduction.exceptions import AlphabetMismatchError, LocalizationError, ModelError


class GenKind(IntEnum):
    """Generator kinds; the integer value is the kind rank in the monomial order."""

    MU = 0
    LCOEF = 1
    SIGMA_INV = 2


class GenId(NamedTuple):
    """One generator: Lcoef(a, i, j), Mu(i, j) or SigmaInv(i, j), indices 1-based."""

    kind: GenKind
    a: int
    i: int
    j: int

    @classmethod
    def mu(cls, i: int, j: int) -> "GenId":
        return cls(GenKind.MU, 0, i, j)

    @classmethod
    def lcoef(cls, a: int, i: int, j: int) -> "GenId":
        return cls(GenKind.LCOEF, a, i, j)

    @classmethod
    def sigma_inv(cls, i: int, j: int) -> "GenId":
        return cls(GenKind.SIGMA_INV, 0, i, j)

    @property
    def name(self) -> str:
        match self.kind:
            case GenKind.MU:
                return f"mu{self.i}{self.j}"
            case GenKind.LCOEF:
                return f"L{self.a}_{self.i}{self.j}"
            case GenKind.SIGMA_INV:
                return f"sig{self.i}{self.j}"


def mu_exists(i: int, j: int) -> bool:
    """Leading coefficient is lower-triangular with mu_11 = 0."""
    return i >= j and (i, j) != (1, 1)


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator table. Index order is the generator order of the monomial order."""

    N: int
    n: int
    gens: tuple[GenId, ...]
    localized: bool = False
    index: dict[GenId, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {g: k for k, g in enumerate(self.gens)})

    @classmethod
    def build(cls, N: int, n: int) -> "Alphabet":
        if N < 2 or n < 1:
            raise ModelError(f"Need N >= 2 and n >= 1, got N={N}, n={n}")
        gens = [GenId.mu(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if mu_exists(i, j)]
        gens += [
            GenId.lcoef(a, i, j)
            for a in range(n)
            for i in range(1, N + 1)
            for j in range(1, N + 1)
        ]
        return cls(N, n, tuple(sorted(gens)))

    def with_localization(self) -> "Alphabet":
        if self.localized:
            raise LocalizationError("Localization already enabled")
        sigma = [GenId.sigma_inv(i, j) for i in range(1, self.N + 1) for j in range(1, self.N + 1)]
        return Alphabet(self.N, self.n, self.gens + tuple(sigma), localized=True)

    def __len__(self) -> int:
        return len(self.gens)

    def __contains__(self, gen: object) -> bool:
        return gen in self.index

    def position(self, gen: GenId) -> int:
        try:
            return self.index[gen]
        except KeyError:
            raise AlphabetMismatchError(f"Generator {gen.name} not in alphabet") from None

    def names(self) -> list[str]:
        return [g.name for g in self.gens]

    def word_text(self, word: tuple[int, ...]) -> str:
        return "*".join(self.gens[k].name for k in word) if word else "1"

    def parse_word(self, text: str) -> tuple[int, ...]:
        if text in ("", "1"):
            return ()
        by_name = {g.name: k for k, g in enumerate(self.gens)}
        try:
            return tuple(by_name[part] for part in text.split("*"))
        except KeyError as e:
            raise AlphabetMismatchError(f"Unknown generator {e.args[0]}") from None

    def compatible(self, other: "Alphabet") -> bool:
        return self.gens == other.gens
