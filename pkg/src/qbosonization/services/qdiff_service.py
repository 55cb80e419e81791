"""q-difference operators on truncated polynomial spaces.

A polynomial in w (or in w and v) is a coefficient vector in the monomial basis.
Multiplication by w shifts degrees up, the dilation p(w) -> p(qw) scales the
coefficient of w^n by q^n and the Jackson derivative

    (p(qw) - p(q^-1 w)) / ((q - q^-1) w)

sends w^n to [n] w^(n-1). Identifying w^n with |n> turns these three operators into
a+, K and a- of the Exact-basis Fock representation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from qbosonization.models import AlgebraMode, Basis, CheckRecord, CheckReport, CheckStatus
from qbosonization.services.fock_service import (
    FockJudge,
    FockRep,
    Number,
    OperatorMatrix,
    as_number,
    compare_matrices,
    diagonal_inverse,
    is_exact,
    matrix_from_entries,
    rep_matrix,
)
from qbosonization.services.fock_service import number_matrix as fock_number_matrix
from qbosonization.services.matrix_service import QuantumMatrix2, check_gl2q_relations
from qbosonization.services.oscillator_service import OscillatorAlgebra
from qbosonization.services.realization_service import realization_matrix

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 15
SAMPLE_POLYNOMIALS = 8

Coefficients = List[Number]


@dataclass(frozen=True)
class PolyBasisRep:
    max_degree: int = DEFAULT_MAX_DEGREE
    q_value: Number = 0.8
    variables: int = 1

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError(f"max_degree must be positive, got {self.max_degree}")
        if self.variables not in (1, 2):
            raise ValueError(f"Variable count must be 1 or 2, got {self.variables}")

    @classmethod
    def create(cls, max_degree: int = DEFAULT_MAX_DEGREE, q_value: Any = 0.8, variables: int = 1) -> "PolyBasisRep":
        return cls(max_degree, as_number(q_value), variables)

    @property
    def dim(self) -> int:
        return self.max_degree + 1

    def fock_rep(self, parameters: Optional[Mapping[str, Any]] = None) -> FockRep:
        """The Exact-basis Fock representation this space is identified with."""
        return FockRep.create(self.dim, self.q_value, Basis.EXACT, self.variables, parameters)


def _zero(q_value: Number) -> Number:
    return Fraction(0) if is_exact(q_value) else 0.0


def multiply_by_w(coeffs: Sequence[Number], max_degree: int) -> Coefficients:
    """w p(w), dropping the part above max_degree."""
    if not coeffs:
        return []
    shifted = [coeffs[0] * 0] + list(coeffs)
    return shifted[: max_degree + 1]


def dilation(coeffs: Sequence[Number], q_value: Number) -> Coefficients:
    """p(q w)."""
    return [c * q_value ** n for n, c in enumerate(coeffs)]


def jackson_derivative(coeffs: Sequence[Number], q_value: Number) -> Coefficients:
    """Jackson derivative computed as a difference quotient of dilations."""
    if not coeffs:
        return []
    if q_value in (1, -1):
        # the quotient degenerates to its limit n q^(n-1)
        return [n * c * q_value ** (n - 1) for n, c in enumerate(coeffs)][1:]
    forward = dilation(coeffs, q_value)
    backward = dilation(coeffs, 1 / q_value)
    gap = q_value - 1 / q_value
    difference = [f - b for f, b in zip(forward, backward)]
    # difference[0] vanishes, so dividing by w is a shift down
    return [value / gap for value in difference[1:]]


class QDiffMatrices(NamedTuple):
    M: OperatorMatrix
    Dq: OperatorMatrix
    Kq: OperatorMatrix
    Kq_inv: OperatorMatrix


def _qnumber_at(q_value: Number, n: int) -> Number:
    if q_value in (1, -1):
        return n * q_value ** (n - 1)
    return (q_value ** n - q_value ** (-n)) / (q_value - 1 / q_value)


def _lift(
    rep: PolyBasisRep,
    fock: FockRep,
    action: Dict[int, Tuple[int, Number]],
    variable: int,
    excess: int,
) -> OperatorMatrix:
    """Embed a single-variable action n -> (target, coefficient) on the tensor basis."""
    entries: Dict[Tuple[int, int], Number] = {}
    for index in range(fock.size):
        levels = list(fock.state(index))
        step = action.get(levels[variable - 1])
        if step is None:
            continue
        levels[variable - 1] = step[0]
        entries[(fock.index(tuple(levels)), index)] = step[1]
    excesses = [0] * rep.variables
    excesses[variable - 1] = excess
    return matrix_from_entries(entries, fock, tuple(excesses))


def qdiff_matrices(
    rep: PolyBasisRep,
    variable: int = 1,
    parameters: Optional[Mapping[str, Any]] = None,
) -> QDiffMatrices:
    """M, qD, qK and qK^-1 for one variable, acting on the (tensor) monomial basis."""
    if not 1 <= variable <= rep.variables:
        raise ValueError(f"Variable index {variable} outside 1..{rep.variables}")
    fock = rep.fock_rep(parameters)
    q = fock.q_value
    top = rep.max_degree
    shift = {n: (n + 1, Fraction(1) if fock.exact else 1.0) for n in range(top)}
    derivative = {n: (n - 1, _qnumber_at(q, n)) for n in range(1, top + 1)}
    kq = {n: (n, q ** n) for n in range(top + 1)}
    kq_inv = {n: (n, q ** (-n)) for n in range(top + 1)}
    return QDiffMatrices(
        M=_lift(rep, fock, shift, variable, 1),
        Dq=_lift(rep, fock, derivative, variable, 0),
        Kq=_lift(rep, fock, kq, variable, 0),
        Kq_inv=_lift(rep, fock, kq_inv, variable, 0),
    )


def number_matrix(rep: PolyBasisRep, variable: int = 1) -> OperatorMatrix:
    """N = w d/dw, the degree operator diag(n)."""
    return fock_number_matrix(rep.fock_rep(), variable)


def _record(name: str, passed: bool, witness: str = "", residual: Optional[float] = None) -> CheckRecord:
    return CheckRecord(
        relation=name,
        status=CheckStatus.PASS if passed else CheckStatus.FAIL,
        witness="" if passed else witness,
        mode="Fock",
        residual=residual,
    )


def _sample_polynomials(rep: PolyBasisRep, seed: int) -> List[Coefficients]:
    rng = np.random.default_rng(seed)
    samples: List[Coefficients] = []
    for _ in range(SAMPLE_POLYNOMIALS):
        raw = rng.integers(-9, 10, size=rep.dim)
        if is_exact(rep.q_value):
            samples.append([Fraction(int(c)) for c in raw])
        else:
            samples.append([float(c) for c in raw])
    return samples


def check_jackson_consistency(rep: PolyBasisRep, seed: int = 0, tol: float = 1e-9) -> CheckRecord:
    """Matrix path against the difference quotient on a seeded polynomial sample."""
    if rep.variables != 1:
        raise ValueError("Jackson consistency is checked on the one-variable space")
    matrices = qdiff_matrices(rep)
    derivative = matrices.Dq.to_array()
    worst = 0.0
    mismatched = 0
    for coeffs in _sample_polynomials(rep, seed):
        quotient = jackson_derivative(coeffs, rep.q_value) + [_zero(rep.q_value)]
        via_matrix = derivative.dot(np.array(coeffs, dtype=object if matrices.Dq.exact else complex))
        for got, want in zip(via_matrix, quotient):
            gap = abs(got - want)
            if matrices.Dq.exact:
                mismatched += gap != 0
            else:
                bound = tol * max(1.0, float(abs(want)))
                mismatched += float(gap) > bound
            worst = max(worst, float(gap))
    return _record(
        "jackson:difference-quotient",
        mismatched == 0,
        f"{mismatched} coefficients differ, max gap {worst:.3e}",
        worst,
    )


def check_qdiff_oscillator(rep: PolyBasisRep, seed: int = 0, tol: Optional[float] = None) -> CheckReport:
    """q-oscillator relations for (M, qD, qK) and agreement with the Fock matrices."""
    if rep.variables != 1:
        raise ValueError("Oscillator checks run on the one-variable space")
    fock = rep.fock_rep()
    judge = FockJudge(fock, tol)
    M, Dq, Kq, Kq_inv = qdiff_matrices(rep)
    q = fock.q_value
    report = CheckReport()
    report.add(judge.judge("qdiff:DM-qMD=K^-1", Dq * M - (M * Dq).scaled(q) - Kq_inv))
    report.add(judge.judge("qdiff:KM=qMK", Kq * M - (M * Kq).scaled(q)))
    report.add(judge.judge("qdiff:[K,K^-1]=0", Kq * Kq_inv - Kq_inv * Kq))

    algebra = OscillatorAlgebra(1, AlgebraMode.GENERIC)
    columns = list(range(fock.size))
    for label, ours, expr in (
        ("M", M, algebra.raising()),
        ("D", Dq, algebra.lowering()),
        ("K", Kq, algebra.k()),
    ):
        report.add(compare_matrices(f"qdiff:matches-fock:{label}", ours, rep_matrix(expr, fock), columns, judge.tol))

    degrees = number_matrix(rep).diagonal()
    q_to_n = matrix_from_entries({(n, n): q ** round(abs(deg)) for n, deg in enumerate(degrees)}, fock)
    report.add(compare_matrices("qdiff:dilation=q^N", Kq, q_to_n, columns, judge.tol))
    report.add(compare_matrices("qdiff:K^-1-inverse", Kq_inv, diagonal_inverse(Kq, fock), columns, judge.tol))
    report.add(check_jackson_consistency(rep, seed, judge.tol or 1e-9))
    logger.debug("[QDIFF] oscillator checks at q=%s: failed %s", q, report.failed())
    return report


def realize_gl2q_qdiff(rep: PolyBasisRep, params: Optional[Mapping[str, Any]] = None) -> QuantumMatrix2:
    """GL_q(2) generators as q-difference operators in two variables.

    a = gamma Kw Kv^-1 + alpha beta delta Mw Kw^-1 Kv Dv
    b = alpha delta Mw Kw^-1 Kv
    c = beta delta Kw^-1 Kv Dv
    d = delta Kw^-1 Kv
    """
    if rep.variables != 2:
        raise ValueError("The GL_q(2) realization needs two variables")
    fock = rep.fock_rep(params)
    values = fock.assignment()
    alpha, beta, gamma, delta = (values[s] for s in ("alpha", "beta", "gamma", "delta"))
    Mw, _, Kw, Kw_inv = qdiff_matrices(rep, 1, params)
    _, Dv, Kv, Kv_inv = qdiff_matrices(rep, 2, params)
    ratio = Kw_inv * Kv
    a = (Kw * Kv_inv).scaled(gamma) + (Mw * ratio * Dv).scaled(alpha * beta * delta)
    b = (Mw * ratio).scaled(alpha * delta)
    c = (ratio * Dv).scaled(beta * delta)
    d = ratio.scaled(delta)
    return QuantumMatrix2(a, b, c, d)


def check_qdiff_realization(
    rep: PolyBasisRep,
    params: Optional[Mapping[str, Any]] = None,
    tol: Optional[float] = None,
) -> CheckReport:
    """GL_q(2) relations of the q-difference realization and its agreement with Eq12."""
    fock = rep.fock_rep(params)
    judge = FockJudge(fock, tol)
    T = realize_gl2q_qdiff(rep, params)
    report = check_gl2q_relations(T, judge=judge)
    reference = realization_matrix("Eq12", AlgebraMode.GENERIC)
    columns = list(range(fock.size))
    # Equal entries on every column keep each relation residual within 10x of the Fock run's.
    for name, ours, expr in zip("abcd", T.entries(), reference.entries()):
        report.add(compare_matrices(f"qdiff=fock:{name}", ours, rep_matrix(expr, fock), columns, judge.tol))
    return report
