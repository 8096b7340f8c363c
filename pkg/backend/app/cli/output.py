"""Renders command results: JSON for exact documents, CSV or tables for float reports."""

import json
import sys
from typing import Any, TextIO

import pandas as pd
from pydantic import BaseModel

from app.models import ConvergenceReport, LimitDemoReport, ResidualReport


def to_document(result: Any) -> Any:
    if isinstance(result, BaseModel):
        return result.model_dump(mode="json")
    return result


def _is_cell(value: Any) -> bool:
    if isinstance(value, list):
        return all(isinstance(v, str | int) for v in value)
    return isinstance(value, str | int | float | bool)


def to_frame(result: Any) -> pd.DataFrame | None:
    if isinstance(result, ConvergenceReport | LimitDemoReport):
        return result.to_frame()
    if isinstance(result, ResidualReport):
        return pd.DataFrame(
            [{"suite": result.suite, "checked": result.checked, "failures": result.failures}]
        )
    if isinstance(result, dict) and all(_is_cell(v) for v in result.values()):
        return pd.DataFrame(
            [{k: ",".join(map(str, v)) if isinstance(v, list) else v for k, v in result.items()}]
        )
    return None


def render(result: Any, fmt: str = "json") -> str:
    """JSON keys are sorted and rationals are already strings, so output is byte-stable."""
    if fmt != "json":
        frame = to_frame(result)
        if frame is not None:
            if fmt == "csv":
                return str(frame.to_csv(index=False))
            return frame.to_string(index=False) + "\n"
    return json.dumps(to_document(result), sort_keys=True, indent=2) + "\n"


def emit(result: Any, fmt: str = "json", stream: TextIO | None = None) -> None:
    (stream or sys.stdout).write(render(result, fmt))
