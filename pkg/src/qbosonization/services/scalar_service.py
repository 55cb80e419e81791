"""Exact Laurent polynomials over the rationals in q and the realization parameters.

A Scalar maps exponent vectors (ordered as schema.SYMBOLS) to nonzero Fractions.
The symbol Lambda stands for 1/(q - q^-1); a Scalar containing it is kept in the
form P * Lambda^k where P is not divisible by (q - q^-1) whenever k > 0, which makes
equality of Scalars equality of their term maps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Dict, Mapping, Optional, Tuple, Union

from qbosonization.exceptions import EvalError, InvertibilityError
from qbosonization.schema import LAMBDA_INDEX, Q_INDEX, SYMBOL_INDEX, SYMBOLS

Exponents = Tuple[int, ...]
Rational = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction]

_WIDTH = len(SYMBOLS)
_ORIGIN: Exponents = (0,) * _WIDTH


def _unit(index: int, power: int = 1) -> Exponents:
    exps = [0] * _WIDTH
    exps[index] = power
    return tuple(exps)


def _mul_exps(left: Exponents, right: Exponents) -> Exponents:
    return tuple(a + b for a, b in zip(left, right))


def _add_into(acc: Dict[Exponents, Fraction], exps: Exponents, coeff: Rational) -> None:
    value = acc.get(exps, 0) + coeff
    if value:
        acc[exps] = value
    else:
        acc.pop(exps, None)


def _mul_terms(left: Mapping[Exponents, Fraction], right: Mapping[Exponents, Fraction]) -> Dict[Exponents, Fraction]:
    product: Dict[Exponents, Fraction] = {}
    for e1, c1 in left.items():
        for e2, c2 in right.items():
            _add_into(product, _mul_exps(e1, e2), c1 * c2)
    return product


@lru_cache(maxsize=None)
def _lambda_power(n: int) -> Tuple[Tuple[Exponents, Fraction], ...]:
    """Expansion of (q - q^-1)^n."""
    terms: Dict[Exponents, Fraction] = {_ORIGIN: Fraction(1)}
    step = {_unit(Q_INDEX, 1): Fraction(1), _unit(Q_INDEX, -1): Fraction(-1)}
    for _ in range(n):
        terms = _mul_terms(terms, step)
    return tuple(terms.items())


def _with_lambda(exps: Exponents, power: int) -> Exponents:
    return exps[:LAMBDA_INDEX] + (power,) + exps[LAMBDA_INDEX + 1:]


def _divide_by_lambda(terms: Mapping[Exponents, Fraction]) -> Optional[Dict[Exponents, Fraction]]:
    """Exact quotient by (q - q^-1), or None when it does not divide."""
    columns: Dict[Exponents, Dict[int, Fraction]] = {}
    for exps, coeff in terms.items():
        rest = exps[:Q_INDEX] + (0,) + exps[Q_INDEX + 1:]
        columns.setdefault(rest, {})[exps[Q_INDEX]] = coeff

    quotient: Dict[Exponents, Fraction] = {}
    for rest, column in columns.items():
        lo, hi = min(column), max(column)
        if hi - lo < 2:
            return None
        # p_e = Q_{e-1} - Q_{e+1}, solved from the top exponent down.
        solved: Dict[int, Fraction] = {}
        for e in range(hi, lo + 1, -1):
            value = column.get(e, 0) + solved.get(e + 1, 0)
            if value:
                solved[e - 1] = value
        if column.get(lo + 1, 0) != -solved.get(lo + 2, 0) or column.get(lo, 0) != -solved.get(lo + 1, 0):
            return None
        for e, coeff in solved.items():
            quotient[rest[:Q_INDEX] + (e,) + rest[Q_INDEX + 1:]] = coeff
    return quotient


def _canonical(terms: Mapping[Exponents, Rational]) -> Dict[Exponents, Fraction]:
    clean = {exps: Fraction(coeff) for exps, coeff in terms.items() if coeff}
    if not any(exps[LAMBDA_INDEX] for exps in clean):
        return clean

    top = max(0, max(exps[LAMBDA_INDEX] for exps in clean))
    numerator: Dict[Exponents, Fraction] = {}
    for exps, coeff in clean.items():
        power = exps[LAMBDA_INDEX]
        base = _with_lambda(exps, 0)
        for lam_exps, lam_coeff in _lambda_power(top - power):
            _add_into(numerator, _mul_exps(base, lam_exps), coeff * lam_coeff)

    while top > 0 and numerator:
        quotient = _divide_by_lambda(numerator)
        if quotient is None:
            break
        numerator, top = quotient, top - 1

    return {_with_lambda(exps, top): coeff for exps, coeff in numerator.items()}


def _render_monomial(exps: Exponents) -> str:
    parts = []
    for name, power in zip(SYMBOLS, exps):
        if power == 1:
            parts.append(name)
        elif power:
            parts.append(f"{name}^{power}")
    return "*".join(parts)


class Scalar:
    """Immutable exact coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Exponents, Rational]] = None):
        self._terms: Dict[Exponents, Fraction] = _canonical(terms or {})

    @classmethod
    def constant(cls, value: Rational) -> "Scalar":
        return cls({_ORIGIN: Fraction(value)})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "Scalar":
        if name not in SYMBOL_INDEX:
            raise ValueError(f"Unknown symbol '{name}'. Must be one of {list(SYMBOLS)}")
        return cls({_unit(SYMBOL_INDEX[name], power): Fraction(1)})

    @classmethod
    def zero(cls) -> "Scalar":
        return cls()

    @classmethod
    def one(cls) -> "Scalar":
        return cls.constant(1)

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls.constant(value)
        raise TypeError(f"Cannot use {type(value).__name__} as an exact Scalar")

    @property
    def terms(self) -> Tuple[Tuple[Exponents, Fraction], ...]:
        """Terms sorted lexicographically on exponent vectors."""
        return tuple(sorted(self._terms.items()))

    def symbols(self) -> Tuple[str, ...]:
        used = {i for exps in self._terms for i, power in enumerate(exps) if power}
        return tuple(SYMBOLS[i] for i in sorted(used))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(exps == _ORIGIN for exps in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"Scalar '{self}' is not a constant")
        return self._terms.get(_ORIGIN, Fraction(0))

    def is_invertible(self) -> bool:
        return len(self._terms) == 1

    def inverse(self) -> "Scalar":
        if not self.is_invertible():
            raise InvertibilityError(f"Scalar '{self}' is not a single term and has no inverse")
        (exps, coeff), = self._terms.items()
        return Scalar({tuple(-e for e in exps): 1 / coeff})

    def invert_q(self) -> "Scalar":
        """Image under q -> q^-1 (Lambda picks up a sign per power)."""
        result: Dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            flipped = exps[:Q_INDEX] + (-exps[Q_INDEX],) + exps[Q_INDEX + 1:]
            sign = -1 if exps[LAMBDA_INDEX] % 2 else 1
            _add_into(result, flipped, sign * coeff)
        return Scalar(result)

    def __add__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        merged = dict(self._terms)
        for exps, coeff in other._terms.items():
            _add_into(merged, exps, coeff)
        return Scalar(merged)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({exps: -coeff for exps, coeff in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(_mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Scalar.constant(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in self.terms:
            monomial = _render_monomial(exps)
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar('{self.render()}')"


def q_power(n: int) -> Scalar:
    return Scalar.symbol("q", n)


def q_lambda(n: int = 1) -> Scalar:
    """q^n - q^-n; the plain lambda for n = 1."""
    return q_power(n) - q_power(-n)


def scalar_arith(x: Scalar, y: Optional[Union[ScalarLike, int]] = None, op: str = "add") -> Scalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "int_pow":
        if not isinstance(y, int):
            raise ValueError("int_pow needs an integer exponent")
        return x ** y
    raise ValueError(f"Invalid op '{op}'. Must be one of ['add', 'sub', 'mul', 'neg', 'int_pow']")


def qnumber(n: int) -> Scalar:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError(f"q-number needs n >= 0, got {n}")
    return Scalar({_unit(Q_INDEX, n - 1 - 2 * k): 1 for k in range(n)})


def qfactorial(n: int) -> Scalar:
    if n < 0:
        raise ValueError(f"q-factorial needs n >= 0, got {n}")
    result = Scalar.one()
    for k in range(1, n + 1):
        result = result * qnumber(k)
    return result


def _is_exact(value: object) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def scalar_eval(x: Scalar, assignment: Mapping[str, Number]) -> Number:
    """Evaluate x under a symbol assignment.

    Lambda defaults to 1/(q - q^-1). The result is a Fraction when every value used is
    rational and a float or complex otherwise.
    """
    values = dict(assignment)
    used = x.symbols()
    if "Lambda" in used and "Lambda" not in values:
        if "q" not in values:
            raise EvalError("Cannot evaluate Lambda without a value for q")
        qv = values["q"]
        if qv == 0:
            raise EvalError("q = 0 has no inverse")
        denominator = qv - 1 / qv if not _is_exact(qv) else Fraction(qv) - 1 / Fraction(qv)
        if denominator == 0:
            raise EvalError(f"Lambda = 1/(q - q^-1) is undefined at q = {qv}")
        values["Lambda"] = 1 / denominator

    missing = [name for name in used if name not in values]
    if missing:
        raise EvalError(f"No value assigned to {missing}")

    exact = all(_is_exact(values[name]) for name in used)
    total: Number = Fraction(0) if exact else 0.0
    for exps, coeff in x.terms:
        term: Number = coeff if exact else float(coeff)
        for name, power in zip(SYMBOLS, exps):
            if not power:
                continue
            value = values[name]
            if exact:
                value = Fraction(value)
            if power < 0 and value == 0:
                raise EvalError(f"Symbol '{name}' is assigned 0 but appears with exponent {power}")
            term = term * value ** power
        total = total + term
    return total

