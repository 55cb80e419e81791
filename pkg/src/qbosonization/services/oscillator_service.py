"""Normal ordering for one or two mutually commuting q-oscillators.

Per oscillator a word reads a+^r a-^l K^k. Products are reduced with

    a- a+ -> q a+ a- + K^-1
    K a+  -> q a+ K
    K a-  -> q^-1 a- K

and, in FockRestricted mode, additionally a+ a- -> Lambda (K - K^-1), which leaves
no word with both r and l positive. Every rewrite lowers the number of a- letters
standing left of an a+ letter, so reduction terminates; the two modes are confluent,
so two expressions are equal iff their normal forms are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from qbosonization.exceptions import AlgebraMismatchError, NonInvertibleError
from qbosonization.models import AlgebraMode
from qbosonization.services.scalar_service import Scalar, qnumber, q_power

Word = Tuple[int, int, int]  # (raise_pow, lower_pow, k_exp)
IDENTITY_WORD: Word = (0, 0, 0)
LAMBDA_INV = Scalar.symbol("Lambda")


@lru_cache(maxsize=None)
def _q(n: int) -> Scalar:
    return q_power(n)


@lru_cache(maxsize=None)
def _qnum(n: int) -> Scalar:
    return qnumber(n)


def _accumulate(acc: Dict, key, coeff: Scalar) -> None:
    value = acc[key] + coeff if key in acc else coeff
    if value:
        acc[key] = value
    else:
        acc.pop(key, None)


@dataclass(frozen=True, order=True)
class NormalWord:
    """One normal-ordered word per oscillator, oscillator 1 first."""
    factors: Tuple[Word, ...]

    @classmethod
    def identity(cls, oscillators: int) -> "NormalWord":
        return cls((IDENTITY_WORD,) * oscillators)

    @property
    def oscillators(self) -> int:
        return len(self.factors)

    def raise_pow(self, i: int = 1) -> int:
        return self.factors[i - 1][0]

    def lower_pow(self, i: int = 1) -> int:
        return self.factors[i - 1][1]

    def k_exp(self, i: int = 1) -> int:
        return self.factors[i - 1][2]

    def is_k_monomial(self) -> bool:
        return all(r == 0 and l == 0 for r, l, _ in self.factors)

    def raising_excess(self) -> Tuple[int, ...]:
        return tuple(max(0, r - l) for r, l, _ in self.factors)

    def padded(self, oscillators: int) -> "NormalWord":
        return NormalWord(self.factors + (IDENTITY_WORD,) * (oscillators - len(self.factors)))

    def render(self) -> str:
        parts: List[str] = []
        for i, (r, l, k) in enumerate(self.factors, 1):
            tag = f"({i})" if len(self.factors) > 1 else ""
            if r:
                parts.append(f"a+{tag}" + (f"^{r}" if r > 1 else ""))
            if l:
                parts.append(f"a-{tag}" + (f"^{l}" if l > 1 else ""))
            if k:
                parts.append(f"K{tag}" + (f"^{k}" if k != 1 else ""))
        return "*".join(parts) or "1"


def _lower_left(terms: Mapping[Word, Scalar]) -> Dict[Word, Scalar]:
    """a- * (a+^r a-^l K^k) = q^r a+^r a-^(l+1) K^k + [r] q^l a+^(r-1) a-^l K^(k-1)."""
    result: Dict[Word, Scalar] = {}
    for (r, l, k), coeff in terms.items():
        _accumulate(result, (r, l + 1, k), coeff * _q(r))
        if r:
            _accumulate(result, (r - 1, l, k - 1), coeff * _qnum(r) * _q(l))
    return result


def _fock_reduce(terms: Mapping[Word, Scalar]) -> Dict[Word, Scalar]:
    result: Dict[Word, Scalar] = {}
    current = dict(terms)
    while current:
        pending: Dict[Word, Scalar] = {}
        for (r, l, k), coeff in current.items():
            if r and l:
                # a+^(r-1) (a+ a-) a-^(l-1) K^k with a+ a- = Lambda (K - K^-1)
                _accumulate(pending, (r - 1, l - 1, k + 1), coeff * LAMBDA_INV * _q(1 - l))
                _accumulate(pending, (r - 1, l - 1, k - 1), -(coeff * LAMBDA_INV * _q(l - 1)))
            else:
                _accumulate(result, (r, l, k), coeff)
        current = pending
    return result


@lru_cache(maxsize=None)
def _word_product(left: Word, right: Word, fock: bool) -> Tuple[Tuple[Word, Scalar], ...]:
    r1, l1, k1 = left
    r2, l2, k2 = right
    current: Dict[Word, Scalar] = {(r2, l2, k1 + k2): _q(k1 * (r2 - l2))}
    for _ in range(l1):
        current = _lower_left(current)
    result: Dict[Word, Scalar] = {}
    for (r, l, k), coeff in current.items():
        _accumulate(result, (r + r1, l, k), coeff)
    if fock:
        result = _fock_reduce(result)
    return tuple(sorted(result.items(), key=lambda item: item[0]))


def _reduce_word(word: NormalWord) -> Dict[NormalWord, Scalar]:
    partial: List[Tuple[Tuple[Word, ...], Scalar]] = [((), Scalar.one())]
    for factor in word.factors:
        reduced = _fock_reduce({factor: Scalar.one()})
        partial = [(words + (w,), c * rc) for words, c in partial for w, rc in reduced.items()]
    result: Dict[NormalWord, Scalar] = {}
    for words, coeff in partial:
        _accumulate(result, NormalWord(words), coeff)
    return result


ScalarLike = Union[Scalar, int, Fraction]


class OperatorExpr:
    """Finite sum of Scalar-weighted normal words; immutable."""

    __slots__ = ("_terms", "oscillators", "mode", "_hash")

    def __init__(
        self,
        terms: Mapping[NormalWord, ScalarLike],
        oscillators: int = 1,
        mode: AlgebraMode = AlgebraMode.GENERIC,
        normalized: bool = False,
    ):
        if oscillators not in (1, 2):
            raise ValueError(f"Oscillator count must be 1 or 2, got {oscillators}")
        collected: Dict[NormalWord, Scalar] = {}
        for word, coeff in terms.items():
            if word.oscillators != oscillators:
                raise AlgebraMismatchError(
                    f"Word '{word.render()}' has {word.oscillators} oscillators, expected {oscillators}"
                )
            coeff = Scalar.coerce(coeff)
            if mode == AlgebraMode.FOCK_RESTRICTED and not normalized:
                for reduced, factor in _reduce_word(word).items():
                    _accumulate(collected, reduced, coeff * factor)
            else:
                _accumulate(collected, word, coeff)
        self._terms = collected
        self.oscillators = oscillators
        self.mode = mode
        self._hash = None

    @property
    def terms(self) -> Tuple[Tuple[NormalWord, Scalar], ...]:
        return tuple(sorted(self._terms.items(), key=lambda item: item[0]))

    def coefficient(self, word: NormalWord) -> Scalar:
        return self._terms.get(word, Scalar.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def raising_excess(self) -> Tuple[int, ...]:
        excess = [0] * self.oscillators
        for word in self._terms:
            for i, value in enumerate(word.raising_excess()):
                excess[i] = max(excess[i], value)
        return tuple(excess)

    def in_mode(self, mode: AlgebraMode) -> "OperatorExpr":
        if mode == self.mode:
            return self
        if self.mode == AlgebraMode.FOCK_RESTRICTED:
            raise AlgebraMismatchError("FockRestricted expressions cannot be lifted back to Generic mode")
        return OperatorExpr(self._terms, self.oscillators, mode)

    def _like(self, terms: Mapping[NormalWord, Scalar]) -> "OperatorExpr":
        return OperatorExpr(terms, self.oscillators, self.mode, normalized=True)

    def _check_compatible(self, other: "OperatorExpr") -> None:
        if other.mode != self.mode:
            raise AlgebraMismatchError(f"Cannot combine {self.mode.value} and {other.mode.value} expressions")
        if other.oscillators != self.oscillators:
            raise AlgebraMismatchError(
                f"Cannot combine expressions over {self.oscillators} and {other.oscillators} oscillators"
            )

    def _as_expr(self, value) -> "OperatorExpr":
        if isinstance(value, OperatorExpr):
            self._check_compatible(value)
            return value
        return self._like({NormalWord.identity(self.oscillators): Scalar.coerce(value)})

    def __add__(self, other):
        if not isinstance(other, (OperatorExpr, Scalar, int, Fraction)):
            return NotImplemented
        other = self._as_expr(other)
        merged = dict(self._terms)
        for word, coeff in other._terms.items():
            _accumulate(merged, word, coeff)
        return self._like(merged)

    __radd__ = __add__

    def __neg__(self) -> "OperatorExpr":
        return self._like({word: -coeff for word, coeff in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (OperatorExpr, Scalar, int, Fraction)):
            return NotImplemented
        return self + (-self._as_expr(other))

    def __rsub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self._as_expr(other) - self

    def scaled(self, factor: ScalarLike) -> "OperatorExpr":
        factor = Scalar.coerce(factor)
        return self._like({word: coeff * factor for word, coeff in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return _multiply(self, other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "OperatorExpr":
        if exponent < 0:
            raise ValueError("Use invert_k_monomial for inverses")
        result = self._as_expr(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Scalar, int, Fraction)):
            other = self._as_expr(other)
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.oscillators == other.oscillators
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.mode, self.oscillators, frozenset(self._terms.items())))
        return self._hash

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for word, coeff in self.terms:
            body = word.render()
            negative = False
            if word == NormalWord.identity(self.oscillators):
                single = len(coeff.terms) == 1 or len(self._terms) == 1
                text = coeff.render() if single else f"({coeff.render()})"
            elif coeff == 1:
                text = body
            elif coeff == -1:
                text = f"-{body}"
            elif len(coeff.terms) == 1:
                text = f"{coeff.render()}*{body}"
            else:
                text = f"({coeff.render()})*{body}"
            if pieces and text.startswith("-") and len(coeff.terms) == 1:
                negative = True
                text = text[1:]
            if not pieces:
                pieces.append(text)
            else:
                pieces.append(f" - {text}" if negative else f" + {text}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"OperatorExpr('{self.render()}', {self.mode.value})"


def _multiply(x: OperatorExpr, y: OperatorExpr) -> OperatorExpr:
    x._check_compatible(y)
    fock = x.mode == AlgebraMode.FOCK_RESTRICTED
    result: Dict[NormalWord, Scalar] = {}
    for w1, c1 in x._terms.items():
        for w2, c2 in y._terms.items():
            partial: List[Tuple[Tuple[Word, ...], Scalar]] = [((), c1 * c2)]
            for f1, f2 in zip(w1.factors, w2.factors):
                products = _word_product(f1, f2, fock)
                partial = [(words + (w,), c * pc) for words, c in partial for w, pc in products]
            for words, coeff in partial:
                _accumulate(result, NormalWord(words), coeff)
    return x._like(result)


@dataclass(frozen=True)
class OscillatorAlgebra:
    """Generator factory for a fixed oscillator count and mode."""
    oscillators: int = 1
    mode: AlgebraMode = AlgebraMode.GENERIC

    def word(self, i: int, raise_pow: int = 0, lower_pow: int = 0, k_exp: int = 0) -> NormalWord:
        if not 1 <= i <= self.oscillators:
            raise ValueError(f"Oscillator index {i} outside 1..{self.oscillators}")
        factors = [IDENTITY_WORD] * self.oscillators
        factors[i - 1] = (raise_pow, lower_pow, k_exp)
        return NormalWord(tuple(factors))

    def monomial(self, i: int, raise_pow: int = 0, lower_pow: int = 0, k_exp: int = 0,
                 coeff: ScalarLike = 1) -> OperatorExpr:
        return OperatorExpr({self.word(i, raise_pow, lower_pow, k_exp): coeff}, self.oscillators, self.mode)

    def scalar(self, value: ScalarLike) -> OperatorExpr:
        return OperatorExpr({NormalWord.identity(self.oscillators): value}, self.oscillators, self.mode)

    def one(self) -> OperatorExpr:
        return self.scalar(1)

    def zero(self) -> OperatorExpr:
        return OperatorExpr({}, self.oscillators, self.mode)

    def raising(self, i: int = 1, power: int = 1) -> OperatorExpr:
        return self.monomial(i, raise_pow=power)

    def lowering(self, i: int = 1, power: int = 1) -> OperatorExpr:
        return self.monomial(i, lower_pow=power)

    def k(self, i: int = 1, power: int = 1) -> OperatorExpr:
        return self.monomial(i, k_exp=power)

    def number_qnumber(self, i: int = 1, shift: int = 0) -> OperatorExpr:
        """[N + shift] = Lambda (q^shift K - q^-shift K^-1)."""
        return (self.k(i).scaled(_q(shift)) - self.k(i, -1).scaled(_q(-shift))).scaled(LAMBDA_INV)

    def x_element(self, i: int = 1) -> OperatorExpr:
        """X = lambda a+ a- + K^-1."""
        lam = _q(1) - _q(-1)
        return linear_combine([(lam, self.raising(i) * self.lowering(i)), (Scalar.one(), self.k(i, -1))])

    def y_element(self, i: int = 1) -> OperatorExpr:
        """Y = lambda a+ a- - q K^-1."""
        lam = _q(1) - _q(-1)
        return linear_combine([(lam, self.raising(i) * self.lowering(i)), (-_q(1), self.k(i, -1))])

    def w_element(self, i: int = 1) -> OperatorExpr:
        """W = q a+ a- + K^-1, acting as [N+1] on the Fock space."""
        return linear_combine([(_q(1), self.raising(i) * self.lowering(i)), (Scalar.one(), self.k(i, -1))])

    def zeta(self, i: int = 1) -> OperatorExpr:
        """K^-1 ([N] - a+ a-)."""
        return self.k(i, -1) * (self.number_qnumber(i) - self.raising(i) * self.lowering(i))


def _require_mode(mode: AlgebraMode, *exprs: OperatorExpr) -> None:
    for expr in exprs:
        if expr.mode != mode:
            raise AlgebraMismatchError(f"Expression is in {expr.mode.value} mode, expected {mode.value}")


def multiply(x: OperatorExpr, y: OperatorExpr, mode: AlgebraMode) -> OperatorExpr:
    _require_mode(mode, x, y)
    return _multiply(x, y)


def linear_combine(parts: Sequence[Tuple[ScalarLike, OperatorExpr]]) -> OperatorExpr:
    if not parts:
        raise ValueError("linear_combine needs at least one part")
    total = parts[0][1].scaled(parts[0][0])
    for weight, expr in parts[1:]:
        total = total + expr.scaled(weight)
    return total


def q_commutator(x: OperatorExpr, y: OperatorExpr, p: ScalarLike, mode: AlgebraMode) -> OperatorExpr:
    """x y - p y x."""
    return multiply(x, y, mode) - multiply(y, x, mode).scaled(p)


def zeta_element(mode: AlgebraMode = AlgebraMode.GENERIC, oscillators: int = 1, i: int = 1) -> OperatorExpr:
    return OscillatorAlgebra(oscillators, mode).zeta(i)


def invert_k_monomial(x: OperatorExpr) -> OperatorExpr:
    terms = x.terms
    if len(terms) != 1:
        raise NonInvertibleError(f"'{x.render()}' is not a single term")
    word, coeff = terms[0]
    if not word.is_k_monomial():
        raise NonInvertibleError(f"'{x.render()}' contains raising or lowering operators")
    if not coeff.is_invertible():
        raise NonInvertibleError(f"Coefficient '{coeff.render()}' is not a monomial")
    inverse_word = NormalWord(tuple((0, 0, -k) for _, _, k in word.factors))
    return OperatorExpr({inverse_word: coeff.inverse()}, x.oscillators, x.mode)


def is_zero(x: OperatorExpr) -> bool:
    return x.is_zero()


def raising_excess(x: OperatorExpr) -> Tuple[int, ...]:
    return x.raising_excess()

