"""Products that contain formal-series inverses such as W^-1.

W = q a+ a- + K^-1 acts diagonally on the Fock space with eigenvalues [n+1], so its
inverse exists there as a formal power series but not as a polynomial in the
generators. A FormalExpr keeps such inverses as opaque factors; only the Fock
backend can resolve them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from qbosonization.exceptions import AlgebraMismatchError, NumericOnlyError
from qbosonization.models import AlgebraMode
from qbosonization.services.oscillator_service import OperatorExpr
from qbosonization.services.scalar_service import Scalar


@dataclass(frozen=True)
class SeriesInverse:
    """Inverse of an operator that is diagonal on the Fock space."""
    base: OperatorExpr

    def render(self) -> str:
        return f"({self.base.render()})^-1"


Factor = Union[OperatorExpr, SeriesInverse]
Product = Tuple[Factor, ...]


def _factor_excess(factor: Factor, oscillators: int) -> Tuple[int, ...]:
    if isinstance(factor, SeriesInverse):
        return (0,) * oscillators
    return factor.raising_excess()


class FormalExpr:
    """Sum of Scalar-weighted products of operators and series inverses."""

    __slots__ = ("_terms", "oscillators", "mode")

    def __init__(self, terms: Dict[Product, Scalar], oscillators: int, mode: AlgebraMode):
        self._terms = {product: coeff for product, coeff in terms.items() if coeff}
        self.oscillators = oscillators
        self.mode = mode

    @classmethod
    def lift(cls, value: Union["FormalExpr", Factor]) -> "FormalExpr":
        if isinstance(value, FormalExpr):
            return value
        base = value.base if isinstance(value, SeriesInverse) else value
        return cls({(value,): Scalar.one()}, base.oscillators, base.mode)

    @property
    def terms(self) -> Tuple[Tuple[Product, Scalar], ...]:
        return tuple(self._terms.items())

    def has_series_inverse(self) -> bool:
        return any(isinstance(f, SeriesInverse) for product in self._terms for f in product)

    def raising_excess(self) -> Tuple[int, ...]:
        """Max over terms of the summed factor excesses, per oscillator."""
        excess = [0] * self.oscillators
        for product in self._terms:
            totals = [0] * self.oscillators
            for factor in product:
                for i, value in enumerate(_factor_excess(factor, self.oscillators)):
                    totals[i] += value
            excess = [max(a, b) for a, b in zip(excess, totals)]
        return tuple(excess)

    def to_operator(self) -> OperatorExpr:
        if self.has_series_inverse():
            raise NumericOnlyError(f"'{self.render()}' contains a series inverse")
        total = OperatorExpr({}, self.oscillators, self.mode)
        for product, coeff in self._terms.items():
            value = product[0]
            for factor in product[1:]:
                value = value * factor
            total = total + value.scaled(coeff)
        return total

    def _coerce(self, other) -> "FormalExpr":
        if isinstance(other, (Scalar, int, Fraction)):
            identity = OperatorExpr({}, self.oscillators, self.mode) + 1
            return FormalExpr({(identity,): Scalar.coerce(other)}, self.oscillators, self.mode)
        other = FormalExpr.lift(other)
        if other.mode != self.mode or other.oscillators != self.oscillators:
            raise AlgebraMismatchError("Cannot combine formal expressions over different algebras")
        return other

    def __add__(self, other):
        if not isinstance(other, (FormalExpr, OperatorExpr, SeriesInverse, Scalar, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        merged = dict(self._terms)
        for product, coeff in other._terms.items():
            merged[product] = merged[product] + coeff if product in merged else coeff
        return FormalExpr(merged, self.oscillators, self.mode)

    __radd__ = __add__

    def __neg__(self) -> "FormalExpr":
        return FormalExpr({p: -c for p, c in self._terms.items()}, self.oscillators, self.mode)

    def __sub__(self, other):
        if not isinstance(other, (FormalExpr, OperatorExpr, SeriesInverse, Scalar, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            factor = Scalar.coerce(other)
            return FormalExpr({p: c * factor for p, c in self._terms.items()}, self.oscillators, self.mode)
        if not isinstance(other, (FormalExpr, OperatorExpr, SeriesInverse)):
            return NotImplemented
        other = self._coerce(other)
        result: Dict[Product, Scalar] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                product = p1 + p2
                coeff = c1 * c2
                result[product] = result[product] + coeff if product in result else coeff
        return FormalExpr(result, self.oscillators, self.mode)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self * other
        if isinstance(other, (OperatorExpr, SeriesInverse)):
            return FormalExpr.lift(other) * self
        return NotImplemented

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for product, coeff in self._terms.items():
            factors = "".join(
                f.render() if isinstance(f, SeriesInverse) else f"({f.render()})" for f in product
            )
            prefix = "" if coeff == 1 else f"({coeff.render()})*"
            pieces.append(prefix + factors)
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FormalExpr('{self.render()}')"


def series_inverse(base: OperatorExpr) -> FormalExpr:
    return FormalExpr.lift(SeriesInverse(base))
