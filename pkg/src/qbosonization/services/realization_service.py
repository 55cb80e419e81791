"""Catalog of q-bosonizations of GL_q(2).

Each entry is registered in database.realization_repository with a builder that
produces its operators in a requested algebra mode, the builder of its catalogued
quantum determinant and, where a printed form of the entries exists separately from
the construction, a builder for that printed form.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, List

from qbosonization import schema
from qbosonization.database import RealizationRecord, realization_repository
from qbosonization.models import AlgebraMode, RealizationBackend, RealizationSpec
from qbosonization.services.matrix_service import GaussFactors, QuantumMatrix2, gauss_compose
from qbosonization.services.oscillator_service import OperatorExpr, OscillatorAlgebra
from qbosonization.services.scalar_service import Scalar, q_lambda, q_power
from qbosonization.services.series_service import series_inverse

logger = logging.getLogger(__name__)


def _s(name: str, power: int = 1) -> Scalar:
    return Scalar.symbol(name, power)


LAMBDA = q_lambda(1)


def _minus_mu_nu_over_q(mode: AlgebraMode) -> OperatorExpr:
    return OscillatorAlgebra(1, mode).scalar(-_s("mu") * _s("nu") * q_power(-1))


def _one_osc_scalar(value: Scalar):
    def build(mode: AlgebraMode) -> OperatorExpr:
        return OscillatorAlgebra(1, mode).scalar(value)
    return build


def _two_osc_scalar(value: Scalar):
    def build(mode: AlgebraMode) -> OperatorExpr:
        return OscillatorAlgebra(2, mode).scalar(value)
    return build


# One oscillator: T, T1, T2

def build_t(mode: AlgebraMode) -> QuantumMatrix2:
    alg = OscillatorAlgebra(1, mode)
    mu, nu = _s("mu"), _s("nu")
    return QuantumMatrix2(
        (alg.k() * alg.lowering()).scaled(LAMBDA * mu * nu),
        alg.k().scaled(mu),
        alg.k().scaled(nu),
        alg.raising(),
        mode,
    )


def build_t1(mode: AlgebraMode) -> QuantumMatrix2:
    alg = OscillatorAlgebra(1, mode)
    mu, nu = _s("mu"), _s("nu")
    return QuantumMatrix2(
        alg.raising().scaled(-LAMBDA * mu * nu),
        alg.k(power=-1).scaled(mu),
        alg.k(power=-1).scaled(nu),
        alg.k(power=-1) * alg.lowering(),
        mode,
    )


def build_t2(mode: AlgebraMode) -> QuantumMatrix2:
    alg = OscillatorAlgebra(1, mode)
    tail = alg.scalar(_s("D")) + alg.raising(power=2).scaled(q_power(1))
    return QuantumMatrix2(
        alg.k().scaled(_s("mu")),
        alg.raising(),
        alg.raising(),
        (alg.k(power=-1) * tail).scaled(_s("mu", -1)),
        mode,
    )


# Two oscillators: T3 and the Gauss-factor families

def build_t3(mode: AlgebraMode) -> QuantumMatrix2:
    alg = OscillatorAlgebra(2, mode)
    mu, nu, sigma = _s("mu"), _s("nu"), _s("sigma")
    return QuantumMatrix2(
        (alg.raising(1) * alg.lowering(1) * alg.k(2)).scaled(LAMBDA * mu * q_power(-1)),
        alg.x_element(2).scaled(mu * nu * _s("sigma", -1)),
        alg.k(2).scaled(sigma),
        series_inverse(alg.w_element(1)) * nu,
        mode,
    )


def _q_shift(alg: OscillatorAlgebra) -> OperatorExpr:
    """q^(N2 - N1)."""
    return alg.k(1, -1) * alg.k(2)


def build_eq12(mode: AlgebraMode) -> GaussFactors:
    alg = OscillatorAlgebra(2, mode)
    return GaussFactors(
        u=alg.raising(1).scaled(_s("alpha")),
        z=alg.lowering(2).scaled(_s("beta")),
        A=(alg.k(1) * alg.k(2, -1)).scaled(_s("gamma")),
        B=_q_shift(alg).scaled(_s("delta")),
        mode=mode,
    )


def displayed_eq12(mode: AlgebraMode) -> Dict[str, OperatorExpr]:
    """Entries as printed next to the Gauss factors, factor order kept."""
    alg = OscillatorAlgebra(2, mode)
    alpha, beta, gamma, delta = (_s(x) for x in ("alpha", "beta", "gamma", "delta"))
    shift = _q_shift(alg)
    return {
        "a": (alg.k(1) * alg.k(2, -1)).scaled(gamma)
        + (shift * alg.raising(1) * alg.lowering(2)).scaled(alpha * beta * delta),
        "b": (alg.raising(1) * shift).scaled(alpha * delta),
        "c": (shift * alg.lowering(2)).scaled(beta * delta),
        "d": shift.scaled(delta),
    }


def build_xy(mode: AlgebraMode) -> GaussFactors:
    alg = OscillatorAlgebra(2, mode)
    return GaussFactors(
        u=alg.raising(1).scaled(_s("alpha")),
        z=alg.lowering(2).scaled(_s("beta")),
        A=(alg.x_element(1) * alg.y_element(2)).scaled(_s("gamma")),
        B=(alg.y_element(1) * alg.x_element(2)).scaled(_s("delta")),
        mode=mode,
    )


def qdet_xy(mode: AlgebraMode) -> OperatorExpr:
    alg = OscillatorAlgebra(2, mode)
    product = alg.x_element(1) * alg.x_element(2) * alg.y_element(1) * alg.y_element(2)
    return product.scaled(_s("gamma") * _s("delta"))


def build_one_boson_w(mode: AlgebraMode) -> GaussFactors:
    alg = OscillatorAlgebra(1, mode)
    mu, nu = _s("mu"), _s("nu")
    w_inv = series_inverse(alg.w_element())
    k, lowering = alg.k(), alg.lowering()
    return GaussFactors(
        u=k.scaled(mu) * w_inv * lowering,
        z=alg.scalar(q_power(1) * nu) * w_inv * k * lowering,
        A=(alg.scalar(LAMBDA) - k.scaled(q_power(1)) * w_inv) * k * lowering * (mu * nu),
        B=alg.raising(),
        mode=mode,
    )


_T_GENERIC_FAILURES = [
    "ad-da=lambda*bc", schema.QDET_FORMS, schema.QDET_VALUE, "qdet:central[a]", "qdet:central[d]",
]
_XY_FAILURES = [
    "Az=q*zA", "uB=q*Bu", "ac=q*ca", "bd=q*db", "bc=cb", "ad-da=lambda*bc",
    schema.QDET_FORMS, "qdet:central[a]", "qdet:central[b]", "qdet:central[c]",
]
_ONE_BOSON_W_FAILURES = [
    "ac=q*ca", "cd=q*dc", "ad-da=lambda*bc", schema.QDET_FORMS, schema.QDET_VALUE,
    "qdet:central[a]", "qdet:central[d]", schema.QDET_AB, "AB=BA",
]
_T3_FAILURES = [
    "ab=q*ba", "ac=q*ca", "bd=q*db", "cd=q*dc", "ad-da=lambda*bc", schema.QDET_FORMS, schema.QDET_VALUE,
]


def _register_catalog() -> None:
    records = [
        RealizationRecord(
            RealizationSpec(
                name="T",
                oscillators=1,
                parameters=["mu", "nu"],
                expected_mode=AlgebraMode.FOCK_RESTRICTED,
                source="(lambda mu nu q^N a-, mu q^N; nu q^N, a+)",
                expected_failures={AlgebraMode.GENERIC.value: _T_GENERIC_FAILURES},
                notes="ad - da = lambda bc needs a- a+ = [N+1]; qdet = -mu nu q^-1 on Fock space",
            ),
            build_t,
            _minus_mu_nu_over_q,
        ),
        RealizationRecord(
            RealizationSpec(
                name="T1",
                oscillators=1,
                parameters=["mu", "nu"],
                expected_mode=AlgebraMode.FOCK_RESTRICTED,
                source="(-lambda mu nu a+, mu q^-N; nu q^-N, q^-N a-)",
                expected_failures={AlgebraMode.GENERIC.value: [schema.QDET_VALUE]},
                notes="relations hold in Generic mode; qdet = -mu nu q (1 - lambda zeta)",
            ),
            build_t1,
            _one_osc_scalar(-_s("mu") * _s("nu") * q_power(1)),
        ),
        RealizationRecord(
            RealizationSpec(
                name="T2",
                oscillators=1,
                parameters=["mu", "D"],
                expected_mode=AlgebraMode.FOCK_RESTRICTED,
                source="(mu q^N, a+; a+, mu^-1 q^-N (D + q a+^2))",
                notes="D central; relations hold in Generic mode",
            ),
            build_t2,
            _one_osc_scalar(_s("D")),
        ),
        RealizationRecord(
            RealizationSpec(
                name="T3",
                oscillators=2,
                parameters=["mu", "nu", "sigma"],
                expected_mode=AlgebraMode.FOCK_RESTRICTED,
                backend=RealizationBackend.NUMERIC_ONLY,
                source="(lambda mu a+(1) a-(1) q^(N2-1), mu nu sigma^-1 X2; sigma q^N2, nu W1^-1)",
                expected_failures={"numeric": _T3_FAILURES},
                notes="a and b commute, so ab = q ba cannot hold; qdet differs from -mu nu q^-1",
            ),
            build_t3,
            _two_osc_scalar(-_s("mu") * _s("nu") * q_power(-1)),
        ),
        RealizationRecord(
            RealizationSpec(
                name="Eq12",
                oscillators=2,
                parameters=["alpha", "beta", "gamma", "delta"],
                expected_mode=AlgebraMode.GENERIC,
                source="u = alpha a+(1), z = beta a-(2), A = gamma q^(N1-N2), B = delta q^(N2-N1)",
                gauss=True,
                expected_failures={
                    AlgebraMode.GENERIC.value: ["display:a"],
                    AlgebraMode.FOCK_RESTRICTED.value: ["display:a"],
                },
                notes="the a+(1) a-(2) term of the printed a-entry is q^-1 times the composed one",
            ),
            build_eq12,
            _two_osc_scalar(_s("gamma") * _s("delta")),
            displayed_eq12,
        ),
        RealizationRecord(
            RealizationSpec(
                name="XY",
                oscillators=2,
                parameters=["alpha", "beta", "gamma", "delta"],
                expected_mode=AlgebraMode.GENERIC,
                source="u = alpha a+(1), z = beta a-(2), A = gamma X1 Y2, B = delta Y1 X2",
                gauss=True,
                expected_failures={
                    AlgebraMode.GENERIC.value: _XY_FAILURES,
                    AlgebraMode.FOCK_RESTRICTED.value: _XY_FAILURES,
                    "numeric": _XY_FAILURES,
                },
                notes="Y2 a-(2) != q a-(2) Y2, so Az = q zA fails and the Gauss product is no quantum matrix",
            ),
            build_xy,
            qdet_xy,
        ),
        RealizationRecord(
            RealizationSpec(
                name="OneBosonW",
                oscillators=1,
                parameters=["mu", "nu"],
                expected_mode=AlgebraMode.FOCK_RESTRICTED,
                backend=RealizationBackend.NUMERIC_ONLY,
                source="u = mu q^N W^-1 a-, z = nu q W^-1 q^N a-, A = mu nu (lambda - q^(N+1) W^-1) q^N a-, B = a+",
                gauss=True,
                expected_failures={"numeric": _ONE_BOSON_W_FAILURES},
                notes="A is proportional to a-, so A and B = a+ do not commute",
            ),
            build_one_boson_w,
            _minus_mu_nu_over_q,
        ),
    ]
    for record in records:
        realization_repository.register(record)
    logger.debug("[CATALOG] registered %s", realization_repository.names())


_register_catalog()


def catalog() -> List[RealizationSpec]:
    return realization_repository.specs()


def make_realization(name: str, mode: AlgebraMode = AlgebraMode.GENERIC) -> Any:
    """QuantumMatrix2 or GaussFactors of a catalog entry, built in the given mode."""
    return realization_repository.get(name).build(mode)


def realization_matrix(name: str, mode: AlgebraMode = AlgebraMode.GENERIC) -> QuantumMatrix2:
    built = make_realization(name, mode)
    if isinstance(built, GaussFactors):
        return gauss_compose(built)
    return built


def expected_qdet(name: str, mode: AlgebraMode = AlgebraMode.GENERIC) -> Any:
    return realization_repository.get(name).qdet_value(mode)


def displayed_entries(name: str, mode: AlgebraMode = AlgebraMode.GENERIC) -> Dict[str, Any]:
    """Printed entry forms, empty when the realization has none."""
    record = realization_repository.get(name)
    return record.displayed(mode) if record.displayed else {}
