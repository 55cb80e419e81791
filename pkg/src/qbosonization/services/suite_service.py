"""Batch verification: every (realization, mode/backend, q) cell and its outcome.

A cell's checks are compared with the catalog's expected failures:

    passed, not expected   -> pass
    failed, expected       -> expected-fail
    failed, not expected   -> unexpected-fail
    passed, expected       -> unexpected-pass

The suite exits nonzero when any cell holds an unexpected outcome.
"""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Set

import numpy as np
import orjson
import pydantic
import sympy

from qbosonization import __version__, schema
from qbosonization.database import RealizationRecord
from qbosonization.exceptions import (
    BosonizationError,
    NonInvertibleError,
    NumericOnlyError,
    RootOfUnityError,
)
from qbosonization.models import (
    AlgebraMode,
    Backend,
    Basis,
    CellReport,
    CheckReport,
    CheckStatus,
    Outcome,
    RealizationBackend,
    SuiteConfig,
    SuiteReport,
)
from qbosonization.services.config_service import explicit_parameters, parameter_assignment, parse_number
from qbosonization.services.fock_service import (
    FockJudge,
    FockRep,
    Number,
    check_fock_extras,
    check_matrix_element_actions,
    format_number,
    is_exact,
)
from qbosonization.services.matrix_service import (
    GaussFactors,
    SymbolicJudge,
    check_dinv_relations,
    check_gauss_round_trip,
    check_gl2q_relations,
    check_oscillator_identities,
    check_qdet_value,
    check_qweyl,
    gauss_compose,
    matrix_power,
    prepare_matrix,
    qdet,
)
from qbosonization.services.oscillator_service import OperatorExpr, OscillatorAlgebra, invert_k_monomial
from qbosonization.services.qdiff_service import PolyBasisRep, check_qdiff_oscillator, check_qdiff_realization
from qbosonization.services.realization_service import realization_repository

logger = logging.getLogger(__name__)

NUMERIC_KEY = "numeric"


@dataclass(frozen=True)
class NumericCase:
    """One q value of the numeric backend."""
    label: str
    q_value: Number
    random_parameters: Dict[str, float] = field(default_factory=dict)

    @property
    def random(self) -> bool:
        return bool(self.random_parameters)


def classify(report: CheckReport, expected: Set[str]) -> Outcome:
    """Set each record's outcome and return the cell outcome."""
    for record in report.records:
        failed = record.status == CheckStatus.FAIL
        if record.relation in expected:
            record.outcome = Outcome.EXPECTED_FAIL if failed else Outcome.UNEXPECTED_PASS
        else:
            record.outcome = Outcome.UNEXPECTED_FAIL if failed else Outcome.PASS
    outcomes = {record.outcome for record in report.records}
    for outcome in (Outcome.UNEXPECTED_FAIL, Outcome.UNEXPECTED_PASS, Outcome.EXPECTED_FAIL):
        if outcome in outcomes:
            return outcome
    return Outcome.PASS


def numeric_cases(config: SuiteConfig) -> List[NumericCase]:
    cases = [NumericCase(text, parse_number(text)) for text in config.q_values]
    if config.random_q:
        rng = np.random.default_rng(config.seed)
        radius = rng.uniform(*schema.RANDOM_Q_RADIUS)
        angle = rng.uniform(*schema.RANDOM_Q_ANGLE)
        q_value = complex(cmath.rect(radius, angle))
        values = rng.uniform(*schema.RANDOM_PARAMETER_RANGE, size=len(schema.PARAMETER_SYMBOLS))
        parameters = {name: float(v) for name, v in zip(schema.PARAMETER_SYMBOLS, values)}
        cases.append(NumericCase(f"{format_number(q_value)} (random)", q_value, parameters))
    return cases


def _has_monomial_d(record: RealizationRecord) -> bool:
    built = record.build(AlgebraMode.GENERIC)
    T = gauss_compose(built) if isinstance(built, GaussFactors) else built
    if not isinstance(T.d, OperatorExpr):
        return False
    try:
        invert_k_monomial(T.d)
    except NonInvertibleError:
        return False
    return True


class SuiteService:
    """Runs the verification suite for a resolved configuration."""

    def run(self, config: SuiteConfig) -> SuiteReport:
        names = realization_repository.names() if config.realizations == ["all"] else list(config.realizations)
        cases = numeric_cases(config) if Backend.NUMERIC in config.backends else []
        report = SuiteReport(meta=self.meta(config))
        logger.info("[SUITE] realizations=%s modes=%s q=%s", names,
                    [m.value for m in config.modes], [case.label for case in cases])

        for name in names:
            record = realization_repository.get(name)
            if Backend.SYMBOLIC in config.backends:
                for mode in config.modes:
                    report.cells.append(self.symbolic_cell(record, mode, config))
            for case in cases:
                report.cells.append(self.numeric_cell(record, case, config))

        if config.auxiliary and config.q_power == 1:
            report.cells.extend(self.auxiliary_cells(config, cases))

        counts = report.outcome_counts()
        logger.info("[SUITE] %d cells, outcomes %s, exit code %d", len(report.cells), counts, report.exit_code)
        return report

    def meta(self, config: SuiteConfig) -> Dict[str, Any]:
        return {
            "config": config.model_dump(mode="json"),
            "versions": {
                "qbosonization": __version__,
                "numpy": np.__version__,
                "sympy": sympy.__version__,
                "pydantic": pydantic.VERSION,
                "orjson": orjson.__version__,
            },
        }

    # -------------------------
    # Realization cells
    # -------------------------

    def relation_suite(self, record: RealizationRecord, mode: AlgebraMode, judge) -> tuple:
        """All relations of one realization under one judge; returns (report, rendered qdet)."""
        built = record.build(mode)
        T = gauss_compose(built) if isinstance(built, GaussFactors) else built
        report = check_gl2q_relations(T, judge=judge)
        value, qdet_report = qdet(T, judge)
        report.extend(qdet_report)
        report.add(check_qdet_value(value, record.qdet_value(mode), judge))
        if isinstance(built, GaussFactors):
            report.add(check_qdet_value(value, built.A * built.B, judge, schema.QDET_AB))
            report.extend(check_qweyl(built, judge))
        if record.displayed is not None and isinstance(judge, SymbolicJudge):
            composed = dict(zip("abcd", T.entries()))
            for entry, printed in record.displayed(mode).items():
                residual = judge.prepare(composed[entry]) - judge.prepare(printed)
                report.add(judge.judge(f"display:{entry}", residual))
        if _has_monomial_d(record):
            if isinstance(judge, SymbolicJudge):
                report.add(check_gauss_round_trip(T))
            report.extend(check_dinv_relations(T, judge))
        return report, judge.render(value)

    def _power_suite(self, record: RealizationRecord, mode: AlgebraMode, judge, n: int) -> CheckReport:
        built = record.build(mode)
        T = gauss_compose(built) if isinstance(built, GaussFactors) else built
        return check_gl2q_relations(matrix_power(prepare_matrix(T, judge), n), q_power=n, judge=judge)

    def _skip_power(self, expected: Set[str], config: SuiteConfig) -> bool:
        return config.q_power > 1 and bool(expected & set(schema.GL2Q_RELATIONS))

    def symbolic_cell(self, record: RealizationRecord, mode: AlgebraMode, config: SuiteConfig) -> CellReport:
        spec = record.spec
        cell = CellReport(realization=spec.name, mode=mode.value, backend=Backend.SYMBOLIC.value)
        if spec.backend == RealizationBackend.NUMERIC_ONLY:
            return self._skipped(cell, "contains a series inverse; numeric backend only")
        expected = spec.expected_for(mode.value)
        if self._skip_power(expected, config):
            return self._skipped(cell, f"GL relations not expected to hold; q_power={config.q_power} skipped")
        judge = SymbolicJudge(mode)
        try:
            if config.q_power > 1:
                report, rendered = self._power_suite(record, mode, judge, config.q_power), ""
            else:
                report, rendered = self.relation_suite(record, mode, judge)
        except NumericOnlyError as e:
            return self._skipped(cell, str(e))
        except BosonizationError as e:
            return self._failed(cell, e)
        return self._finish(cell, report, expected, rendered)

    def numeric_cell(self, record: RealizationRecord, case: NumericCase, config: SuiteConfig) -> CellReport:
        spec = record.spec
        cell = CellReport(realization=spec.name, mode="Fock", backend=Backend.NUMERIC.value, q_value=case.label)
        expected = spec.expected_for(NUMERIC_KEY)
        if self._skip_power(expected, config):
            return self._skipped(cell, f"GL relations not expected to hold; q_power={config.q_power} skipped")
        try:
            rep = self._rep(case, config, spec.oscillators, spec.name)
            judge = FockJudge(rep, config.tolerance)
            if config.q_power > 1:
                report, rendered = self._power_suite(record, AlgebraMode.GENERIC, judge, config.q_power), ""
            else:
                report, rendered = self.relation_suite(record, AlgebraMode.GENERIC, judge)
        except RootOfUnityError as e:
            return self._skipped(cell, str(e))
        except BosonizationError as e:
            return self._failed(cell, e)
        return self._finish(cell, report, expected, rendered)

    # -------------------------
    # Auxiliary cells
    # -------------------------

    def auxiliary_cells(self, config: SuiteConfig, cases: Iterable[NumericCase]) -> List[CellReport]:
        cells: List[CellReport] = []
        if Backend.SYMBOLIC in config.backends:
            for mode in config.modes:
                cells.append(self.oscillator_symbolic_cell(mode))
        for case in cases:
            cells.append(self.oscillator_numeric_cell(case, config))
        for case in cases:
            if not is_exact(case.q_value):
                cells.append(self.actions_cell(case, config))
        for case in cases:
            cells.append(self.qdiff_cell(case, config))
        return cells

    def oscillator_symbolic_cell(self, mode: AlgebraMode) -> CellReport:
        cell = CellReport(realization=schema.OSCILLATOR_CELL, mode=mode.value, backend=Backend.SYMBOLIC.value)
        expected = set(schema.OSCILLATOR_GENERIC_FAILURES) if mode == AlgebraMode.GENERIC else set()
        report = check_oscillator_identities(SymbolicJudge(mode), OscillatorAlgebra(1, mode))
        return self._finish(cell, report, expected)

    def oscillator_numeric_cell(self, case: NumericCase, config: SuiteConfig) -> CellReport:
        cell = CellReport(
            realization=schema.OSCILLATOR_CELL, mode="Fock", backend=Backend.NUMERIC.value, q_value=case.label,
        )
        try:
            rep = self._rep(case, config, 1, None)
            report = check_oscillator_identities(FockJudge(rep, config.tolerance), OscillatorAlgebra(1))
            report.extend(check_fock_extras(rep))
        except RootOfUnityError as e:
            return self._skipped(cell, str(e))
        except BosonizationError as e:
            return self._failed(cell, e)
        return self._finish(cell, report, set())

    def actions_cell(self, case: NumericCase, config: SuiteConfig) -> CellReport:
        cell = CellReport(
            realization=schema.ACTIONS_CELL, mode="Fock", backend=Backend.NUMERIC.value, q_value=case.label,
        )
        try:
            rep = FockRep.create(config.dim, case.q_value, Basis.NORMALIZED, 2, self._parameters(case, config, "Eq12"))
            report = check_matrix_element_actions(rep)
        except RootOfUnityError as e:
            return self._skipped(cell, str(e))
        except BosonizationError as e:
            return self._failed(cell, e)
        values = rep.assignment()
        expected = {schema.PRINTED_B_COEFFICIENT} if values["alpha"] != values["beta"] else set()
        return self._finish(cell, report, expected)

    def qdiff_cell(self, case: NumericCase, config: SuiteConfig) -> CellReport:
        cell = CellReport(
            realization=schema.QDIFF_CELL, mode="Fock", backend=Backend.NUMERIC.value, q_value=case.label,
        )
        try:
            report = check_qdiff_oscillator(
                PolyBasisRep.create(config.dim - 1, case.q_value, 1), config.seed, config.tolerance,
            )
            report.extend(check_qdiff_realization(
                PolyBasisRep.create(config.dim - 1, case.q_value, 2),
                self._parameters(case, config, "Eq12"),
                config.tolerance,
            ))
        except BosonizationError as e:
            return self._failed(cell, e)
        return self._finish(cell, report, set())

    # -------------------------
    # Helpers
    # -------------------------

    def _parameters(self, case: NumericCase, config: SuiteConfig, realization: Optional[str]) -> Dict[str, Number]:
        values = parameter_assignment(config, realization)
        explicit = set(explicit_parameters(config, realization))
        for symbol, value in case.random_parameters.items():
            if symbol not in explicit:
                values[symbol] = value
        return values

    def _rep(self, case: NumericCase, config: SuiteConfig, oscillators: int, realization: Optional[str]) -> FockRep:
        basis = Basis.EXACT if is_exact(case.q_value) else config.basis
        return FockRep.create(
            config.dim, case.q_value, basis, oscillators, self._parameters(case, config, realization),
        )

    @staticmethod
    def _finish(cell: CellReport, report: CheckReport, expected: Set[str], rendered: str = "") -> CellReport:
        cell.outcome = classify(report, expected)
        cell.checks = list(report.records)
        cell.qdet = rendered
        logger.info(
            "[SUITE] %s/%s/%s%s: %s", cell.realization, cell.mode, cell.backend,
            f" q={cell.q_value}" if cell.q_value else "", cell.outcome.value,
        )
        return cell

    @staticmethod
    def _skipped(cell: CellReport, note: str) -> CellReport:
        cell.outcome = Outcome.SKIPPED
        cell.note = note
        logger.info("[SUITE] %s/%s/%s skipped: %s", cell.realization, cell.mode, cell.backend, note)
        return cell

    @staticmethod
    def _failed(cell: CellReport, error: Exception) -> CellReport:
        cell.outcome = Outcome.UNEXPECTED_FAIL
        cell.note = f"{type(error).__name__}: {error}"
        logger.warning("[SUITE] %s/%s/%s errored: %s", cell.realization, cell.mode, cell.backend, cell.note)
        return cell


def run_suite(config: SuiteConfig) -> SuiteReport:
    return SuiteService().run(config)
