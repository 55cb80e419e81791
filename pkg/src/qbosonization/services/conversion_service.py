from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Union

import orjson

from qbosonization.models import SuiteReport
from qbosonization.services.fock_service import OperatorMatrix

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


class ConversionService:
    """Serialization of reports and matrix dumps; output bytes depend only on content."""

    @staticmethod
    def report_to_dict(report: SuiteReport) -> Dict[str, Any]:
        return report.model_dump(mode="json", exclude_none=True)

    @staticmethod
    def report_to_json(report: SuiteReport) -> bytes:
        return orjson.dumps(ConversionService.report_to_dict(report), option=JSON_OPTIONS)

    @staticmethod
    def matrix_to_pairs(matrix: OperatorMatrix) -> List[List[List[float]]]:
        """Row-major [re, im] pairs."""
        dense = matrix.to_array()
        return [
            [[float(complex(value).real), float(complex(value).imag)] for value in row]
            for row in dense
        ]

    @staticmethod
    def matrix_to_json(matrix: OperatorMatrix, label: str = "") -> bytes:
        payload = {
            "label": label,
            "dim": matrix.rep.dim,
            "oscillators": matrix.rep.oscillators,
            "basis": matrix.rep.basis.value,
            "exact": matrix.exact,
            "excess": list(matrix.excess),
            "entries": ConversionService.matrix_to_pairs(matrix),
        }
        return orjson.dumps(payload, option=JSON_OPTIONS)

    @staticmethod
    def write(path: Union[str, Path], data: bytes) -> Path:
        path = Path(path)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        return path

    @staticmethod
    def load(path: Union[str, Path]) -> Any:
        return orjson.loads(Path(path).read_bytes())

    @staticmethod
    def load_bytes(data: bytes) -> Any:
        return orjson.loads(data)
