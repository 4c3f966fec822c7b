"""
Experiment registry, reports, sweeps and the command-line surface.

Run:

    python -m unittest tests.test_experiments
"""
from __future__ import annotations

import csv
import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np
from typer.testing import CliRunner

from main import app
from src.experiments import ExperimentReport, RunOptions, run_experiment, write_report
from src.experiments.report import to_jsonable
from src.experiments.sweep import SweepConfig, load_sweep_config, run_sweep
from src.utils.errors import ConfigError, InvalidAxis

REPORT_KEYS = {"experiment_id", "inputs", "outputs", "pass", "tolerances", "numeric_profile",
               "wall_time", "tool_version", "schema_version"}


class ReportTests(unittest.TestCase):
    def test_to_jsonable(self) -> None:
        value = {"z": 1 + 2j, "arr": np.array([1.0, 2.0]), "flag": np.bool_(True), "n": np.int64(3)}
        self.assertEqual(to_jsonable(value), {"z": {"re": 1.0, "im": 2.0}, "arr": [1.0, 2.0],
                                              "flag": True, "n": 3})

    def test_report_round_trip_keys(self) -> None:
        report = ExperimentReport(experiment_id="demo", outputs={"x": 0.5, "m": np.eye(2) * 1j}, passed=True)
        data = json.loads(report.to_json())
        self.assertEqual(set(data), REPORT_KEYS)
        self.assertTrue(data["pass"])
        self.assertEqual(report.flat_outputs(), {"x": 0.5})
        with tempfile.TemporaryDirectory() as tmp:
            path = write_report(report, tmp)
            self.assertEqual(path.name, "demo.json")

    def test_run_experiment(self) -> None:
        report = run_experiment("hybrid-cnot", RunOptions())
        self.assertTrue(report.passed)
        self.assertIn("checks", report.outputs)
        with self.assertRaises(ConfigError):
            run_experiment("no-such-experiment", RunOptions())

    def test_solve_params_reports_residuals(self) -> None:
        report = run_experiment("solve-params", RunOptions(gate="pi8", mechanism="aa"))
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.outputs["ratio"], -1 / np.sqrt(63), places=12)
        self.assertEqual(report.outputs["branch"], "direct")


class GateExperimentTests(unittest.TestCase):
    def test_single_berry_hadamard(self) -> None:
        report = run_experiment("single-berry", RunOptions(gate="hadamard", slowness=5e-3, tol=5e-2))
        self.assertTrue(report.passed, msg=report.outputs["checks"])
        self.assertLessEqual(report.outputs["closed_form_vs_i_hadamard"], 1e-12)
        self.assertAlmostEqual(report.outputs["B0_over_B1"], 1 / np.sqrt(15), places=12)

    def test_berry_convergence_is_monotone(self) -> None:
        report = run_experiment("berry-convergence", RunOptions(gate="pi8"))
        checks = report.outputs["checks"]
        self.assertTrue(checks["gate_error_monotone"], msg=report.outputs["gate_errors"])
        self.assertTrue(checks["gate_error_final"])
        errors = report.outputs["gate_errors"]
        self.assertEqual(len(errors), 3)
        self.assertLess(errors[-1], errors[0])

    def test_two_aa_demo_finds_nontrivial_point(self) -> None:
        report = run_experiment("two-aa-demo", RunOptions())
        self.assertTrue(report.passed)
        self.assertGreaterEqual(report.outputs["demonstrated"], 1)

    def test_two_aa_reports_scalar_phases(self) -> None:
        report = run_experiment("two-aa", RunOptions(kappa_alpha=1.0, kappa_beta=1.0))
        flat = report.flat_outputs()
        for i in range(4):
            self.assertAlmostEqual(flat[f"geometric_phase_eta{i + 1}"], report.outputs["phases"][i])


class SweepTests(unittest.TestCase):
    def test_axis_validation(self) -> None:
        with self.assertRaises(InvalidAxis):
            SweepConfig(experiment="two-berry", axis="B7", values=[1.0]).check_axis()
        with self.assertRaises(InvalidAxis):
            SweepConfig(experiment="two-berry", axis="J", values=[]).check_axis()

    def test_load_rejects_bad_files(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "sweep.json"
            path.write_text("{not json", encoding="utf-8")
            with self.assertRaises(ConfigError):
                load_sweep_config(path)
            path.write_text(json.dumps({"experiment": "all", "axis": "J", "values": [1.0]}), encoding="utf-8")
            with self.assertRaises(ConfigError):
                load_sweep_config(path)

    def test_sweep_writes_reports_and_csv(self) -> None:
        cfg = SweepConfig(experiment="two-berry", axis="J", values=[0.3, 0.6], base={"kappa_beta": 1.5})
        with tempfile.TemporaryDirectory() as tmp:
            reports = run_sweep(cfg, tmp, workers=1)
            self.assertEqual(len(reports), 2)
            self.assertTrue((Path(tmp) / "two-berry_J_001.json").exists())
            with open(Path(tmp) / "two-berry_J.csv", newline="", encoding="utf-8") as f:
                rows = list(csv.DictReader(f))
            self.assertEqual(list(rows[0])[:2], ["J", "pass"])
            self.assertEqual([float(r["J"]) for r in rows], [0.3, 0.6])
            self.assertIn("max_closed_form_error", rows[0])

    def test_exchange_sweep_tabulates_phases(self) -> None:
        cfg = SweepConfig(experiment="two-aa", axis="J", values=[0.5, 1.0],
                          base={"kappa_alpha": 1.0, "kappa_beta": 2.0})
        with tempfile.TemporaryDirectory() as tmp:
            run_sweep(cfg, tmp, workers=1)
            with open(Path(tmp) / "two-aa_J.csv", newline="", encoding="utf-8") as f:
                rows = list(csv.DictReader(f))
        columns = [c for c in rows[0] if c.startswith("geometric_phase_eta")]
        self.assertEqual(len(columns), 4)
        varying = [c for c in columns if float(rows[0][c]) != float(rows[1][c])]
        self.assertTrue(varying, msg=rows)

    def test_unknown_base_key_rejected(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "sweep.json"
            path.write_text(json.dumps({"experiment": "two-aa", "axis": "J", "values": [0.5],
                                        "base": {"kapa_beta": 2.0}}), encoding="utf-8")
            with self.assertRaises(ConfigError):
                load_sweep_config(path)
        with self.assertRaises(ValueError):
            RunOptions(kapa_beta=2.0)


class CliTests(unittest.TestCase):
    def setUp(self) -> None:
        self.runner = CliRunner()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_hybrid_cnot_passes(self) -> None:
        result = self.runner.invoke(app, ["hybrid-cnot", "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 0, msg=result.output)
        data = json.loads((Path(self.tmp.name) / "hybrid-cnot.json").read_text(encoding="utf-8"))
        self.assertEqual(set(data), REPORT_KEYS)

    def test_two_berry_passes(self) -> None:
        result = self.runner.invoke(app, ["two-berry", "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 0, msg=result.output)

    def test_invalid_option_exits_2(self) -> None:
        result = self.runner.invoke(app, ["single-aa", "--gate", "toffoli", "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 2)

    def test_empty_sweep_axis_exits_2(self) -> None:
        path = Path(self.tmp.name) / "sweep.json"
        path.write_text(json.dumps({"experiment": "two-berry", "axis": "J", "values": []}), encoding="utf-8")
        result = self.runner.invoke(app, ["sweep", str(path), "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 2)

    def test_misspelled_sweep_key_exits_2(self) -> None:
        path = Path(self.tmp.name) / "sweep.json"
        path.write_text(json.dumps({"experiment": "two-berry", "axis": "J", "values": [0.5],
                                    "base": {"kapa_beta": 2.0}}), encoding="utf-8")
        result = self.runner.invoke(app, ["sweep", str(path), "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 2)

    def test_all_runs_every_listed_experiment(self) -> None:
        runs = [("hybrid-cnot", {}), ("solve-params", {"gate": "hadamard"})]
        with patch("main.ACCEPTANCE_RUNS", runs):
            result = self.runner.invoke(app, ["all", "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 0, msg=result.output)
        for name in ("hybrid-cnot", "solve-params"):
            self.assertTrue((Path(self.tmp.name) / f"{name}.json").exists())

    def test_unreachable_parameters_exit_2(self) -> None:
        result = self.runner.invoke(app, ["single-aa", "--kappa", "0", "--out", self.tmp.name])
        self.assertEqual(result.exit_code, 2)


if __name__ == "__main__":
    unittest.main()
