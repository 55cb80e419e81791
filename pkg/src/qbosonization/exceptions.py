from __future__ import annotations

from typing import List, Optional


class BosonizationError(ValueError):
    """Base class for every domain error raised by the kernel."""


class InvertibilityError(BosonizationError):
    """Negative power of a Scalar that is not a single term."""


class EvalError(BosonizationError):
    """A Scalar could not be evaluated under the given assignment."""


class NonInvertibleError(BosonizationError):
    """An operator has no inverse in the monomial sense."""


class AlgebraMismatchError(BosonizationError):
    """Operands belong to different algebra modes or oscillator sets."""


class UnknownRealizationError(BosonizationError):
    def __init__(self, name: str, known: Optional[List[str]] = None):
        self.name = name
        self.known = list(known or [])
        message = f"Unknown realization '{name}'"
        if self.known:
            message += f". Must be one of {self.known}"
        super().__init__(message)


class NumericOnlyError(BosonizationError):
    """Expression contains a series inverse and cannot be judged symbolically."""


class NonDiagonalError(BosonizationError):
    pass


class SingularDiagonalError(BosonizationError):
    pass


class DimensionTooSmallError(BosonizationError):
    def __init__(self, dim: int, excess: int):
        self.dim = dim
        self.excess = excess
        super().__init__(
            f"Truncation dimension {dim} leaves no safe columns for raising excess {excess}"
        )


class RootOfUnityError(BosonizationError):
    pass


class ConfigError(BosonizationError):
    """Configuration problems, collected with their line numbers."""

    def __init__(self, diagnostics: List[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics) or "invalid configuration")
