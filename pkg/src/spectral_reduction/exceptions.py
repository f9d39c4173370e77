"""Custom exceptions for Spectral Reduction."""

from typing import Any


class SpectralReductionError(Exception):
    """Base exception for all Spectral Reduction errors."""

    pass


# Scalar Errors
class ScalarError(SpectralReductionError):
    """Base exception for coefficient arithmetic errors."""

    pass


class ZeroDivisionScalarError(ScalarError):
    """Division by the zero element of Q(q^{1/2})."""

    pass


class SingularSpecializationError(ScalarError):
    """A denominator vanishes at the requested value of q."""

    def __init__(self, denominator: str, value: Any):
        self.denominator = denominator
        self.value = value
        super().__init__(f"Pole at q={value}: denominator '{denominator}' vanishes")


class VariableMismatchError(ScalarError):
    """Polynomials declared over different variable lists were combined."""

    def __init__(self, left: tuple[str, ...], right: tuple[str, ...]):
        self.left = left
        self.right = right
        super().__init__(f"Variable lists differ: {left} vs {right}")


# Matrix Errors
class MatrixError(SpectralReductionError):
    """Base exception for C-number matrix errors."""

    pass


class IndexOutOfRangeError(MatrixError):
    """Matrix unit index outside 1..N."""

    pass


class SpaceTagMismatchError(MatrixError):
    """Matrices living on different tensor spaces were combined."""

    pass


class InverseMismatchError(MatrixError):
    """A closed inverse formula disagrees with exact inversion."""

    pass


# Algebra Errors
class AlgebraError(SpectralReductionError):
    """Base exception for noncommutative algebra errors."""

    pass


class AlphabetMismatchError(AlgebraError):
    """Noncommutative polynomials over different alphabets were combined."""

    pass


class LocalizationError(AlgebraError):
    """Localization requested twice or over an incompatible alphabet."""

    pass


class BudgetExceededError(AlgebraError):
    """A verification engine ran out of its resource budget."""

    def __init__(self, message: str, statistics: dict[str, Any]):
        self.statistics = statistics
        super().__init__(f"{message} ({', '.join(f'{k}={v}' for k, v in statistics.items())})")


# Model Errors
class ModelError(SpectralReductionError):
    """Invalid model parameters or Lax shape."""

    pass


class BracketConsistencyError(ModelError):
    """The r-matrix bracket does not close on the chosen Lax shape."""

    pass


class SingularSimilarityError(ModelError):
    """The similarity matrix s is singular at the sampled point."""

    pass


# Geometry Errors
class GeometryError(SpectralReductionError):
    """Base exception for spectral curve errors."""

    pass


class BranchPointError(GeometryError):
    """The w-derivative of the curve vanishes at the point."""

    pass


class RepeatedPointError(GeometryError):
    """Divisor points coincide; the determinant definition needs changes there."""

    pass


class KernelBudgetError(GeometryError):
    """Measure kernel requested beyond desk scale."""

    pass


# Run Errors
class CertificateError(SpectralReductionError):
    """Malformed certificate file."""

    pass


class ConfigError(SpectralReductionError):
    """Unknown suite or out-of-range run configuration."""

    pass
