"""GL_q(2) relations, quantum determinant and Gauss decomposition.

Every check is written once against a judge. The symbolic judge works on normal
forms in a fixed algebra mode; the Fock judge (fock_service) works on truncated
matrices. Relation residuals are built with ordinary operators, so the same code
covers OperatorExpr, FormalExpr and OperatorMatrix entries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, List, Tuple

from qbosonization import schema
from qbosonization.exceptions import NonInvertibleError
from qbosonization.models import AlgebraMode, CheckRecord, CheckReport, CheckStatus, GaussVariant
from qbosonization.services.oscillator_service import OperatorExpr, OscillatorAlgebra, invert_k_monomial
from qbosonization.services.scalar_service import Scalar, q_lambda, q_power
from qbosonization.services.series_service import FormalExpr

logger = logging.getLogger(__name__)

Entry = Any  # OperatorExpr | FormalExpr | OperatorMatrix


@dataclass(frozen=True)
class QuantumMatrix2:
    a: Entry
    b: Entry
    c: Entry
    d: Entry
    mode: AlgebraMode = AlgebraMode.GENERIC

    def entries(self) -> Tuple[Entry, Entry, Entry, Entry]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "QuantumMatrix2") -> "QuantumMatrix2":
        return QuantumMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.mode,
        )


@dataclass(frozen=True)
class GaussFactors:
    u: Entry
    z: Entry
    A: Entry
    B: Entry
    variant: GaussVariant = GaussVariant.UPPER_LOWER
    mode: AlgebraMode = AlgebraMode.GENERIC


class SymbolicJudge:
    """Decides relations by normal form in one algebra mode."""

    def __init__(self, mode: AlgebraMode = AlgebraMode.GENERIC):
        self.mode = mode
        self.label = mode.value

    def prepare(self, entry: Entry) -> OperatorExpr:
        if isinstance(entry, FormalExpr):
            entry = entry.to_operator()
        if not isinstance(entry, OperatorExpr):
            raise TypeError(f"Symbolic checks need operator expressions, got {type(entry).__name__}")
        return entry.in_mode(self.mode)

    def invert(self, entry: OperatorExpr) -> OperatorExpr:
        return invert_k_monomial(entry)

    def judge(self, relation: str, residual: OperatorExpr, q_power: int = 1) -> CheckRecord:
        if residual.is_zero():
            return CheckRecord(relation=relation, status=CheckStatus.PASS, mode=self.label, q_power=q_power)
        return CheckRecord(
            relation=relation,
            status=CheckStatus.FAIL,
            witness=residual.render(),
            mode=self.label,
            q_power=q_power,
        )

    def render(self, value: OperatorExpr) -> str:
        return value.render()


def _judge_all(judge, residuals: List[Tuple[str, Entry]], q_power: int = 1) -> CheckReport:
    report = CheckReport()
    for name, residual in residuals:
        report.add(judge.judge(name, residual, q_power))
    return report


def _default_judge(mode: AlgebraMode, judge=None):
    return judge if judge is not None else SymbolicJudge(mode)


def prepare_matrix(T: QuantumMatrix2, judge) -> QuantumMatrix2:
    return QuantumMatrix2(*(judge.prepare(x) for x in T.entries()), mode=T.mode)


def check_gl2q_relations(T: QuantumMatrix2, q_power: int = 1, judge=None) -> CheckReport:
    """The six GL_q(2) relations with q replaced by q^q_power."""
    judge = _default_judge(T.mode, judge)
    a, b, c, d = (judge.prepare(x) for x in T.entries())
    qn = Scalar.symbol("q", q_power)
    lam = q_lambda(q_power)
    residuals = [
        ("ab=q*ba", a * b - qn * (b * a)),
        ("ac=q*ca", a * c - qn * (c * a)),
        ("bd=q*db", b * d - qn * (d * b)),
        ("cd=q*dc", c * d - qn * (d * c)),
        ("bc=cb", b * c - c * b),
        ("ad-da=lambda*bc", a * d - d * a - lam * (b * c)),
    ]
    report = _judge_all(judge, residuals, q_power)
    logger.debug("[MATRIX] GL_q(2) at q^%d (%s): failed %s", q_power, judge.label, report.failed())
    return report


def qdet(T: QuantumMatrix2, judge=None) -> Tuple[Entry, CheckReport]:
    """Return ad - q bc and the report on its two forms and its centrality."""
    judge = _default_judge(T.mode, judge)
    a, b, c, d = (judge.prepare(x) for x in T.entries())
    q = q_power(1)
    value = a * d - q * (b * c)
    other = d * a - q_power(-1) * (b * c)
    residuals = [(schema.QDET_FORMS, value - other)]
    for name, x in zip(schema.QDET_CENTRAL, (a, b, c, d)):
        residuals.append((name, value * x - x * value))
    return value, _judge_all(judge, residuals)


def check_qdet_value(value: Entry, expected: Entry, judge, relation: str = schema.QDET_VALUE) -> CheckRecord:
    return judge.judge(relation, value - judge.prepare(expected))


def check_slq2(T: QuantumMatrix2, judge=None) -> CheckRecord:
    """SL_q(2) condition: the quantum determinant equals 1."""
    judge = _default_judge(T.mode, judge)
    value, _ = qdet(T, judge)
    return judge.judge(schema.SLQ2_CONDITION, value - 1)


def gauss_compose(f: GaussFactors) -> QuantumMatrix2:
    u, z, A, B = f.u, f.z, f.A, f.B
    if f.variant == GaussVariant.UPPER_LOWER:
        return QuantumMatrix2(A + u * B * z, u * B, B * z, B, f.mode)
    return QuantumMatrix2(A, A * z, u * A, u * A * z + B, f.mode)


def _require_operator(entry: Entry, role: str) -> OperatorExpr:
    if not isinstance(entry, OperatorExpr):
        raise NonInvertibleError(f"Entry {role} is not a polynomial operator and has no monomial inverse")
    return entry


def gauss_extract(T: QuantumMatrix2, variant: GaussVariant = GaussVariant.UPPER_LOWER) -> GaussFactors:
    a, b, c, d = T.entries()
    if variant == GaussVariant.UPPER_LOWER:
        d_inv = invert_k_monomial(_require_operator(d, "d"))
        return GaussFactors(
            u=b * d_inv, z=d_inv * c, A=a - b * d_inv * c, B=d, variant=variant, mode=T.mode,
        )
    a_inv = invert_k_monomial(_require_operator(a, "a"))
    return GaussFactors(
        u=c * a_inv, z=a_inv * b, A=a, B=d - c * a_inv * b, variant=variant, mode=T.mode,
    )


def check_gauss_round_trip(T: QuantumMatrix2, variant: GaussVariant = GaussVariant.UPPER_LOWER) -> CheckRecord:
    judge = SymbolicJudge(T.mode)
    composed = gauss_compose(gauss_extract(T, variant))
    mismatches = [
        f"{name}: {(x - y).render()}"
        for name, x, y in zip("abcd", composed.entries(), T.entries())
        if x != y
    ]
    return CheckRecord(
        relation=schema.GAUSS_ROUND_TRIP,
        status=CheckStatus.FAIL if mismatches else CheckStatus.PASS,
        witness="; ".join(mismatches),
        mode=judge.label,
    )


def check_qweyl(f: GaussFactors, judge=None) -> CheckReport:
    judge = _default_judge(f.mode, judge)
    u, z, A, B = (judge.prepare(x) for x in (f.u, f.z, f.A, f.B))
    q = q_power(1)
    residuals = [
        ("AB=BA", A * B - B * A),
        ("Au=q*uA", A * u - q * (u * A)),
        ("Az=q*zA", A * z - q * (z * A)),
        ("uB=q*Bu", u * B - q * (B * u)),
        ("zB=q*Bz", z * B - q * (B * z)),
        ("uz=zu", u * z - z * u),
    ]
    return _judge_all(judge, residuals)


def check_dinv_relations(T: QuantumMatrix2, judge=None) -> CheckReport:
    judge = _default_judge(T.mode, judge)
    a, b, c, d = (judge.prepare(x) for x in T.entries())
    d_inv = judge.invert(d)
    q = q_power(1)
    q2 = q_power(2)
    value = a * d - q * (b * c)
    residuals = [
        ("dinv:c", d_inv * c - q * (c * d_inv)),
        ("dinv:b", d_inv * b - q * (b * d_inv)),
        ("dinv:commute", d * d_inv - d_inv * d),
        ("dinv:a", d_inv * a - q2 * (a * d_inv) - (Scalar.one() - q2) * (value * d_inv * d_inv)),
        ("dinv:qdet", value * d_inv - d_inv * value),
    ]
    return _judge_all(judge, residuals)


def matrix_power(T: QuantumMatrix2, n: int) -> QuantumMatrix2:
    if n < 1:
        raise ValueError(f"matrix_power needs n >= 1, got {n}")
    result = T
    for _ in range(n - 1):
        result = result @ T
    return result


def check_oscillator_identities(judge, algebra: OscillatorAlgebra) -> CheckReport:
    """q-oscillator relations that hold generically, and those holding on Fock space only."""
    ap, am, k, kinv = (judge.prepare(x) for x in (
        algebra.raising(), algebra.lowering(), algebra.k(), algebra.k(power=-1),
    ))
    number = judge.prepare(algebra.number_qnumber())
    number_next = judge.prepare(algebra.number_qnumber(shift=1))
    zeta = judge.prepare(algebra.zeta())
    q = q_power(1)
    residuals = [
        ("osc:a-a+-q*a+a-=K^-1", am * ap - q * (ap * am) - kinv),
        ("osc:Ka+=q*a+K", k * ap - q * (ap * k)),
        ("osc:a-a+-q^-1*a+a-=K", am * ap - q_power(-1) * (ap * am) - k),
        ("osc:a+a-=[N]", ap * am - number),
        ("osc:a-a+=[N+1]", am * ap - number_next),
        ("osc:zeta=0", zeta),
    ]
    for label, x in (("a+", ap), ("a-", am), ("K", k), ("K^-1", kinv)):
        residuals.append((f"osc:zeta-central[{label}]", zeta * x - x * zeta))
    return _judge_all(judge, residuals)
