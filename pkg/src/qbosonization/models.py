from __future__ import annotations

from collections import Counter
from enum import Enum
from typing import Any, Dict, List, Optional, Set

from pydantic import BaseModel, Field

from qbosonization import schema


class AlgebraMode(str, Enum):
    """Which relation ideal the normal-ordering engine works modulo."""
    GENERIC = "Generic"
    FOCK_RESTRICTED = "FockRestricted"


class RealizationBackend(str, Enum):
    SYMBOLIC = "Symbolic"
    NUMERIC_ONLY = "NumericOnly"


class Backend(str, Enum):
    SYMBOLIC = "symbolic"
    NUMERIC = "numeric"


class Basis(str, Enum):
    EXACT = "Exact"
    NORMALIZED = "Normalized"


class GaussVariant(str, Enum):
    UPPER_LOWER = "UpperLower"
    LOWER_UPPER = "LowerUpper"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class Outcome(str, Enum):
    PASS = "pass"
    EXPECTED_FAIL = "expected-fail"
    UNEXPECTED_FAIL = "unexpected-fail"
    UNEXPECTED_PASS = "unexpected-pass"
    SKIPPED = "skipped"


UNEXPECTED_OUTCOMES = (Outcome.UNEXPECTED_FAIL, Outcome.UNEXPECTED_PASS)


class CheckRecord(BaseModel):
    """One relation checked in one context."""
    relation: str
    status: CheckStatus
    witness: str = ""  # nonzero normal form, or a residual summary
    mode: str = ""  # 'Generic' | 'FockRestricted' | 'Fock'
    q_power: int = 1
    residual: Optional[float] = None
    outcome: Optional[Outcome] = None

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS


class CheckReport(BaseModel):
    """Ordered records, at most one per relation name."""
    records: List[CheckRecord] = Field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        if any(existing.relation == record.relation for existing in self.records):
            raise ValueError(f"Relation '{record.relation}' already recorded")
        self.records.append(record)

    def extend(self, other: "CheckReport") -> None:
        for record in other.records:
            self.add(record)

    def get(self, relation: str) -> Optional[CheckRecord]:
        for record in self.records:
            if record.relation == relation:
                return record
        return None

    def names(self) -> List[str]:
        return [record.relation for record in self.records]

    def failed(self) -> List[str]:
        return [record.relation for record in self.records if not record.passed]

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)


class RealizationSpec(BaseModel):
    """Catalog entry describing one bosonization."""
    name: str
    oscillators: int = Field(ge=1, le=2)
    parameters: List[str] = Field(default_factory=list)
    expected_mode: AlgebraMode = AlgebraMode.GENERIC
    backend: RealizationBackend = RealizationBackend.SYMBOLIC
    source: str = ""
    gauss: bool = False  # built from Gauss factors (u, z, A, B)
    # Keys: 'Generic' | 'FockRestricted' | 'numeric'
    expected_failures: Dict[str, List[str]] = Field(default_factory=dict)
    notes: str = Field(default="")

    def expected_for(self, cell_key: str) -> Set[str]:
        return set(self.expected_failures.get(cell_key, []))


class SuiteConfig(BaseModel):
    """Resolved harness configuration."""
    realizations: List[str] = Field(default_factory=lambda: ["all"])
    modes: List[AlgebraMode] = Field(default_factory=lambda: [AlgebraMode.GENERIC, AlgebraMode.FOCK_RESTRICTED])
    backends: List[Backend] = Field(default_factory=lambda: [Backend.SYMBOLIC, Backend.NUMERIC])
    dim: int = Field(default=schema.DEFAULT_DIM, ge=4)
    q_values: List[str] = Field(default_factory=lambda: list(schema.DEFAULT_Q_VALUES))
    tolerance: float = Field(default=schema.DEFAULT_TOLERANCE, gt=0)
    parameters: Dict[str, str] = Field(default_factory=dict)
    overrides: Dict[str, Dict[str, str]] = Field(default_factory=dict)  # realization -> symbol -> value
    seed: int = Field(default=schema.DEFAULT_SEED, ge=0)
    q_power: int = Field(default=1, ge=1)
    basis: Basis = Basis.NORMALIZED
    random_q: bool = True
    auxiliary: bool = True


class CellReport(BaseModel):
    """All checks run for one (realization, mode, backend, q) combination."""
    realization: str
    mode: str
    backend: str
    q_value: Optional[str] = None
    checks: List[CheckRecord] = Field(default_factory=list)
    qdet: str = ""
    outcome: Outcome = Outcome.PASS
    note: str = ""


class SuiteReport(BaseModel):
    meta: Dict[str, Any] = Field(default_factory=dict)
    cells: List[CellReport] = Field(default_factory=list)

    def outcome_counts(self) -> Dict[str, int]:
        counts = Counter(
            check.outcome.value for cell in self.cells for check in cell.checks if check.outcome
        )
        counts["cells-skipped"] = sum(1 for cell in self.cells if cell.outcome == Outcome.SKIPPED)
        return dict(sorted(counts.items()))

    @property
    def exit_code(self) -> int:
        return 1 if any(cell.outcome in UNEXPECTED_OUTCOMES for cell in self.cells) else 0
