"""
Named, reproducible experiments with JSON reports and parameter sweeps.
"""
from src.experiments import acceptance, gate_experiments  # noqa: F401  (register experiments)
from src.experiments.registry import EXPERIMENTS, RunOptions, run_experiment
from src.experiments.report import ExperimentReport, write_report

__all__ = ["EXPERIMENTS", "ExperimentReport", "RunOptions", "run_experiment", "write_report"]
