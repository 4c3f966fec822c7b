"""
geogates - geometric-phase gate verification
Main Entry Point
"""
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from config import Config
from src.experiments import ExperimentReport, RunOptions, run_experiment, write_report
from src.experiments.sweep import load_sweep_config, run_sweep
from src.utils.errors import ConfigError, GeoGatesError
from src.utils.logger import set_level

app = typer.Typer(help="geogates - geometric-phase quantum gates under rotating Zeeman fields")
console = Console()
err_console = Console(stderr=True)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# (experiment, overrides) executed by `all`
ACCEPTANCE_RUNS: List[Tuple[str, dict]] = [
    ("propagator-check", {}),
    ("berry-convergence", {"gate": "pi8"}),
    ("single-berry", {"gate": "hadamard"}),
    ("single-aa", {"gate": "pi8"}),
    ("single-aa", {"gate": "hadamard"}),
    ("two-berry-suite", {}),
    ("two-aa", {"kappa_alpha": 1.0, "kappa_beta": 1.0}),
    ("two-aa-demo", {}),
    ("hybrid-cnot", {}),
    ("eigen-structure", {}),
    ("properties", {}),
]

OutOption = typer.Option(None, "--out", "-o", help="Report directory (default: Config.REPORT_DIR)")
SeedOption = typer.Option(0, "--seed", help="Seed for randomized suites")
StepsOption = typer.Option(None, "--steps", help="Steps per cycle for stepped propagation")
SlownessOption = typer.Option(None, "--slowness", help="omega / gap for adiabatic runs")
TolOption = typer.Option(None, "--tol", help="Override the experiment's main threshold")


def _fail(message: str, code: int = EXIT_USAGE) -> None:
    err_console.print(f"[red]Error: {message}[/red]")
    raise typer.Exit(code)


def _options(**kwargs) -> RunOptions:
    try:
        return RunOptions(**{k: v for k, v in kwargs.items() if v is not None})
    except ValidationError as e:
        _fail(f"invalid options: {e}")


def _show(report: ExperimentReport, path: Path) -> None:
    table = Table(title=f"{report.experiment_id} ({'PASS' if report.passed else 'FAIL'})")
    table.add_column("Output", style="cyan")
    table.add_column("Value", style="white")
    for key, value in sorted(report.flat_outputs().items()):
        table.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    for check, ok in report.outputs["checks"].items():
        table.add_row(f"check:{check}", "[green]ok[/green]" if ok else "[red]failed[/red]")
    console.print(table)
    console.print(f"[dim]report: {path}[/dim]")


def _execute(runs: Iterable[Tuple[str, RunOptions]], out: Optional[Path]) -> List[ExperimentReport]:
    reports = []
    for name, options in runs:
        try:
            report = run_experiment(name, options)
        except (GeoGatesError, ValueError) as e:
            _fail(str(e), EXIT_USAGE if isinstance(e, ValueError) else EXIT_FAIL)
        suffix = f"_{options.gate}" if name in ("single-berry", "single-aa", "berry-convergence") else ""
        path = write_report(report, out or Config.REPORT_DIR, f"{name}{suffix}")
        _show(report, path)
        reports.append(report)
    return reports


def _finish(reports: List[ExperimentReport]) -> None:
    raise typer.Exit(EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL)


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging")):
    """Reproduce the geometric gate constructions and two-qubit no-go results."""
    set_level("DEBUG" if verbose else Config.LOG_LEVEL)
    try:
        Config.validate()
    except ConfigError as e:
        _fail(str(e))


@app.command("single-berry")
def single_berry(
    gate: str = typer.Option("pi8", "--gate", "-g", help="pi8 or hadamard"),
    profile: str = typer.Option("smoothstep", "--profile", help="linear or smoothstep phi(t)"),
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
    tol: Optional[float] = TolOption,
):
    """Berry-phase echo gate: closed form and adiabatic simulation"""
    options = _options(gate=gate, profile=profile, seed=seed, steps=steps, slowness=slowness, tol=tol)
    _finish(_execute([("single-berry", options)], out))


@app.command("single-aa")
def single_aa(
    gate: str = typer.Option("pi8", "--gate", "-g", help="pi8 or hadamard"),
    kappa: Optional[float] = typer.Option(None, "--kappa", help="Gyromagnetic ratio (sign picks the branch)"),
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
    tol: Optional[float] = TolOption,
):
    """Zero-dynamical-phase Aharonov-Anandan gate over one period"""
    options = _options(gate=gate, kappa=kappa, seed=seed, steps=steps, slowness=slowness, tol=tol)
    _finish(_execute([("single-aa", options)], out))


def _two_qubit_command(name: str, kappa_alpha, kappa_beta, J, B0, B1, omega, out, seed, steps, slowness, tol):
    options = _options(kappa_alpha=kappa_alpha, kappa_beta=kappa_beta, J=J, B0=B0, B1=B1, omega=omega,
                       seed=seed, steps=steps, slowness=slowness, tol=tol)
    _finish(_execute([(name, options)], out))


@app.command("two-berry")
def two_berry(
    kappa_alpha: float = typer.Option(1.0, "--kappa-alpha"),
    kappa_beta: float = typer.Option(2.0, "--kappa-beta"),
    J: float = typer.Option(0.5, "--J"),
    B0: float = typer.Option(0.5, "--B0"),
    B1: float = typer.Option(1.0, "--B1"),
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
    tol: Optional[float] = TolOption,
):
    """Berry phases of the coupled eigenstates and the factorization verdict"""
    _two_qubit_command("two-berry", kappa_alpha, kappa_beta, J, B0, B1, None, out, seed, steps, slowness, tol)


@app.command("two-aa")
def two_aa(
    kappa_alpha: float = typer.Option(1.0, "--kappa-alpha"),
    kappa_beta: float = typer.Option(1.0, "--kappa-beta"),
    J: float = typer.Option(0.5, "--J"),
    B0: float = typer.Option(0.5, "--B0"),
    B1: float = typer.Option(1.0, "--B1"),
    omega: float = typer.Option(1.0, "--omega"),
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
    tol: Optional[float] = TolOption,
):
    """AA phases of the rotating-frame eigenstates (tau and 2 tau) and their J-dependence"""
    _two_qubit_command("two-aa", kappa_alpha, kappa_beta, J, B0, B1, omega, out, seed, steps, slowness, tol)


@app.command("hybrid-cnot")
def hybrid_cnot(
    branch: str = typer.Option("+i", "--branch", help="sqrt(SWAP) branch: +i or -i"),
    t_source: str = typer.Option("exact", "--t-source", help="pi/8 gate from: exact, berry, aa"),
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
    tol: Optional[float] = TolOption,
):
    """Exchange sqrt(SWAP) and pi/8 gates assembled into a controlled-phase gate"""
    options = _options(branch=branch, t_source=t_source, seed=seed, steps=steps, slowness=slowness, tol=tol)
    _finish(_execute([("hybrid-cnot", options)], out))


@app.command("solve-params")
def solve_params(
    gate: str = typer.Option("pi8", "--gate", "-g", help="pi8 or hadamard"),
    mechanism: str = typer.Option("berry", "--mechanism", "-m", help="berry or aa"),
    kappa: Optional[float] = typer.Option(None, "--kappa"),
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
    tol: Optional[float] = TolOption,
):
    """Field parameters realising a gate, with residuals"""
    options = _options(gate=gate, mechanism=mechanism, kappa=kappa, seed=seed, steps=steps,
                       slowness=slowness, tol=tol)
    _finish(_execute([("solve-params", options)], out))


@app.command()
def sweep(
    config_file: Path = typer.Argument(..., help="JSON sweep file"),
    out: Optional[Path] = OutOption,
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
):
    """Run one experiment over a parameter axis; writes reports and an aggregate CSV"""
    try:
        cfg = load_sweep_config(config_file)
        reports = run_sweep(cfg, out or Config.REPORT_DIR, workers)
    except (GeoGatesError, ValueError) as e:
        _fail(str(e), EXIT_USAGE if isinstance(e, ValueError) else EXIT_FAIL)

    table = Table(title=f"Sweep {cfg.experiment} over {cfg.axis}")
    table.add_column(cfg.axis, style="cyan")
    table.add_column("Pass", style="white")
    for value, report in zip(cfg.values, reports):
        table.add_row(f"{value:g}", "[green]yes[/green]" if report.passed else "[red]no[/red]")
    console.print(table)
    _finish(reports)


@app.command("all")
def run_all(
    out: Optional[Path] = OutOption,
    seed: int = SeedOption,
    steps: Optional[int] = StepsOption,
    slowness: Optional[float] = SlownessOption,
):
    """Run every acceptance experiment and print one summary"""
    runs = [(name, _options(seed=seed, steps=steps, slowness=slowness, **overrides))
            for name, overrides in ACCEPTANCE_RUNS]
    reports = _execute(runs, out)

    summary = Table(title="Acceptance summary")
    summary.add_column("Experiment", style="magenta")
    summary.add_column("Pass", style="white")
    summary.add_column("Time (s)", style="dim")
    for (name, overrides), report in zip(ACCEPTANCE_RUNS, reports):
        label = f"{name} {overrides.get('gate', '')}".strip()
        summary.add_row(label, "[green]yes[/green]" if report.passed else "[red]no[/red]", f"{report.wall_time:.1f}")
    console.print(summary)
    _finish(reports)


if __name__ == "__main__":
    app()
