"""Writers that serialize computed figure rows."""
from __future__ import annotations

import csv
import io
import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Sequence, Type

from smart_workflow import TaskContext

from ecs.pipeline.tasks.plugin_loader import load_plugin_class
from ecs.utils.formatting import format_float


@dataclass
class OutputResult:
    path: Path
    rows: int = 0
    bytes_written: int = 0


class BaseOutputEngine(ABC):
    """Serialize rows to text; :meth:`write` only touches disk once the text is complete."""

    def __init__(self, context: TaskContext | None = None) -> None:
        self._context = context

    @abstractmethod
    def render(self, figure: int, columns: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
        """Return the full file content."""

    def write(
        self,
        path: Path,
        figure: int,
        columns: Sequence[str],
        rows: Sequence[Sequence[float]],
    ) -> OutputResult:
        text = self.render(figure, columns, rows)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = text.encode("utf-8")
        path.write_bytes(data)
        return OutputResult(path=path, rows=len(rows), bytes_written=len(data))


class CsvOutputEngine(BaseOutputEngine):
    def render(self, figure: int, columns: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_float(value) for value in row])
        return buffer.getvalue()


class JsonOutputEngine(BaseOutputEngine):
    def render(self, figure: int, columns: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
        document = {
            "figure": figure,
            "columns": list(columns),
            "rows": [[_json_number(value) for value in row] for row in rows],
        }
        return json.dumps(document, indent=2) + "\n"


def _json_number(value: float) -> float | None:
    # nan marks a column that could not be computed; strict JSON has no NaN
    return None if math.isnan(value) else float(format_float(value))


OUTPUT_ENGINES: Dict[str, Type[BaseOutputEngine]] = {
    "csv": CsvOutputEngine,
    "json": JsonOutputEngine,
}


def load_output_engine(path: str) -> Type[BaseOutputEngine]:
    return load_plugin_class(path, BaseOutputEngine, "Output Engine")


__all__ = [
    "BaseOutputEngine",
    "CsvOutputEngine",
    "JsonOutputEngine",
    "OUTPUT_ENGINES",
    "OutputResult",
    "load_output_engine",
]
