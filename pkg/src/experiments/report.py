"""
Experiment reports: one JSON document per run, plus CSV aggregation for sweeps.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import Config
from src import __version__

SCHEMA_VERSION = 1


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and complex numbers into JSON-compatible values."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(np.real(value)), "im": float(np.imag(value))}
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


class ExperimentReport(BaseModel):
    """Self-describing record of one experiment run."""

    model_config = ConfigDict(populate_by_name=True)

    experiment_id: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    outputs: Dict[str, Any] = Field(default_factory=dict)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    numeric_profile: Dict[str, Any] = Field(default_factory=Config.numeric_profile)
    passed: bool = Field(default=False, alias="pass")
    wall_time: float = 0.0
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable(self.model_dump(by_alias=True))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def flat_outputs(self) -> Dict[str, Any]:
        """Scalar outputs only, for CSV rows."""
        return {k: v for k, v in self.to_dict()["outputs"].items() if isinstance(v, (int, float, bool, str))}


def write_report(report: ExperimentReport, out_dir: str | Path, name: str | None = None) -> Path:
    """Write report as <out_dir>/<name or experiment_id>.json and return the path."""
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / f"{name or report.experiment_id}.json"
    target.write_text(report.to_json(), encoding="utf-8")
    return target


def write_sweep_csv(path: str | Path, axis: str, values: Sequence[Any], reports: List[ExperimentReport]) -> Path:
    """One row per grid point: axis value, pass flag, then the union of scalar outputs (sorted)."""
    rows = []
    keys = set()
    for value, report in zip(values, reports):
        flat = report.flat_outputs()
        keys.update(flat)
        rows.append({axis: value, "pass": report.passed, **flat})
    fieldnames = [axis, "pass"] + sorted(keys)
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return target
