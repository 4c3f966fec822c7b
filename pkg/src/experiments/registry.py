"""
Named experiments and the options they share.

Each experiment is a function RunOptions -> (inputs, outputs, checks, thresholds);
run_experiment times it and wraps the result in an ExperimentReport whose pass
flag is the conjunction of the checks.
"""
from __future__ import annotations

import time
from typing import Callable, Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from config import Config
from src.experiments.report import ExperimentReport
from src.utils.errors import ConfigError
from src.utils.logger import get_logger

logger = get_logger(__name__)

ExperimentOutcome = Tuple[dict, dict, Dict[str, bool], Dict[str, float]]
ExperimentFn = Callable[["RunOptions"], ExperimentOutcome]

EXPERIMENTS: Dict[str, ExperimentFn] = {}


class RunOptions(BaseModel):
    """Command-line overrides and per-experiment parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    steps: Optional[int] = Field(default=None, ge=1)
    slowness: Optional[float] = Field(default=None, gt=0)
    tol: Optional[float] = Field(default=None, gt=0)
    seed: int = Field(default=0, ge=0)
    gate: Literal["pi8", "hadamard"] = "pi8"
    mechanism: Literal["berry", "aa"] = "berry"
    profile: Literal["linear", "smoothstep"] = "smoothstep"
    branch: Literal["+i", "-i"] = "+i"
    t_source: Literal["exact", "berry", "aa"] = "exact"
    kappa: Optional[float] = None
    kappa_alpha: float = 1.0
    kappa_beta: float = 2.0
    J: float = 0.5
    B0: float = 0.5
    B1: float = 1.0
    omega: float = 1.0
    trials: int = Field(default=100, ge=1)
    adiabatic_trials: int = Field(default=5, ge=1)

    @property
    def effective_slowness(self) -> float:
        return self.slowness or Config.DEFAULT_SLOWNESS

    def threshold(self, default: float) -> float:
        """--tol overrides a check's default threshold."""
        return self.tol if self.tol is not None else default


def experiment(name: str) -> Callable[[ExperimentFn], ExperimentFn]:
    """Register fn under name."""
    def register(fn: ExperimentFn) -> ExperimentFn:
        EXPERIMENTS[name] = fn
        return fn
    return register


def run_experiment(name: str, options: RunOptions) -> ExperimentReport:
    """
    Run one named experiment.

    Raises:
        ConfigError: for an unknown experiment name
    """
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    logger.info(f"running {name}")
    start = time.perf_counter()
    inputs, outputs, checks, thresholds = EXPERIMENTS[name](options)
    elapsed = time.perf_counter() - start

    passed = all(checks.values())
    outputs = {**outputs, "checks": dict(sorted(checks.items()))}
    report = ExperimentReport(
        experiment_id=name,
        inputs=inputs,
        outputs=outputs,
        tolerances={**Config.tolerances(), **thresholds},
        passed=passed,
        wall_time=elapsed,
    )
    if passed:
        logger.info(f"{name} passed in {elapsed:.2f}s")
    else:
        failed = [k for k, ok in checks.items() if not ok]
        logger.warning(f"{name} failed checks: {failed}")
    return report
