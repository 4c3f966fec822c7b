"""
Parameter sweeps: one experiment over a grid of values along a single axis.

Grid points run in a multiprocessing pool (one report each); aggregation into
the CSV happens afterwards in the parent, in grid order.
"""
from __future__ import annotations

import json
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from config import Config
from src.experiments.registry import EXPERIMENTS, RunOptions, run_experiment
from src.experiments.report import ExperimentReport, write_report, write_sweep_csv
from src.utils.errors import ConfigError, InvalidAxis
from src.utils.logger import get_logger

logger = get_logger(__name__)

# axis name -> RunOptions field
SWEEP_AXES = {"slowness": "slowness", "J": "J", "omega": "omega", "steps": "steps"}


class SweepConfig(BaseModel):
    """Sweep file contents: {"experiment": ..., "axis": ..., "values": [...], "base": {...}}"""

    model_config = ConfigDict(frozen=True)

    experiment: str
    axis: str
    values: List[float]
    base: Dict[str, Any] = {}

    @field_validator("experiment")
    @classmethod
    def _known_experiment(cls, v: str) -> str:
        if v not in EXPERIMENTS or v in ("sweep", "all"):
            raise ValueError(f"cannot sweep over {v!r}")
        return v

    def check_axis(self) -> None:
        if self.axis not in SWEEP_AXES:
            raise InvalidAxis(f"axis {self.axis!r} not in {sorted(SWEEP_AXES)}")
        if not self.values:
            raise InvalidAxis(f"axis {self.axis!r} has no values")

    def options_at(self, value: float) -> RunOptions:
        field = SWEEP_AXES[self.axis]
        point = int(value) if field == "steps" else value
        return RunOptions(**{**self.base, field: point})


def load_sweep_config(path: str | Path) -> SweepConfig:
    """Parse a JSON sweep file; malformed content is a ConfigError, a bad axis InvalidAxis."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        cfg = SweepConfig(**raw)
    except (OSError, json.JSONDecodeError, ValidationError, TypeError) as e:
        raise ConfigError(f"invalid sweep file {path}: {e}") from e
    cfg.check_axis()
    try:
        cfg.options_at(cfg.values[0])
    except ValidationError as e:
        raise ConfigError(f"invalid sweep base in {path}: {e}") from e
    return cfg


def _run_point(args) -> ExperimentReport:
    name, options = args
    return run_experiment(name, options)


def run_sweep(cfg: SweepConfig, out_dir: str | Path, workers: Optional[int] = None) -> List[ExperimentReport]:
    """Run every grid point, write one report per point and the aggregate CSV."""
    cfg.check_axis()
    try:
        tasks = [(cfg.experiment, cfg.options_at(v)) for v in cfg.values]
    except ValidationError as e:
        raise ConfigError(f"invalid sweep point: {e}") from e

    n = min(workers or Config.SWEEP_WORKERS, len(tasks))
    logger.info(f"sweep {cfg.experiment} over {cfg.axis}: {len(tasks)} points, {n} worker(s)")
    if n > 1:
        with Pool(n) as pool:
            reports = pool.map(_run_point, tasks)
    else:
        reports = [_run_point(t) for t in tasks]

    out = Path(out_dir)
    for i, (value, report) in enumerate(zip(cfg.values, reports)):
        write_report(report, out, f"{cfg.experiment}_{cfg.axis}_{i:03d}")
    write_sweep_csv(out / f"{cfg.experiment}_{cfg.axis}.csv", cfg.axis, cfg.values, reports)
    return reports
