from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from qbosonization.exceptions import UnknownRealizationError
from qbosonization.models import AlgebraMode, RealizationSpec


@dataclass(frozen=True)
class RealizationRecord:
    """Catalog entry together with the builders that produce its operators."""
    spec: RealizationSpec
    build: Callable[[AlgebraMode], Any]  # QuantumMatrix2 or GaussFactors
    qdet_value: Callable[[AlgebraMode], Any]
    displayed: Optional[Callable[[AlgebraMode], Dict[str, Any]]] = field(default=None)


class RealizationRepository:
    """In-memory catalog of realizations, kept in registration order."""

    def __init__(self) -> None:
        self._records: Dict[str, RealizationRecord] = {}

    def register(self, record: RealizationRecord) -> None:
        if record.spec.name in self._records:
            raise ValueError(f"Realization '{record.spec.name}' is already registered")
        self._records[record.spec.name] = record

    def get(self, name: str) -> RealizationRecord:
        record = self._records.get(name)
        if record is None:
            raise UnknownRealizationError(name, self.names())
        return record

    def exists(self, name: str) -> bool:
        return name in self._records

    def names(self) -> List[str]:
        return list(self._records)

    def specs(self) -> List[RealizationSpec]:
        return [record.spec for record in self._records.values()]


# Filled by realization_service at import time
realization_repository = RealizationRepository()
