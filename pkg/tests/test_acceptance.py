"""
Randomized acceptance suites at reduced trial counts.

Run:

    python -m unittest tests.test_acceptance
"""
from __future__ import annotations

import unittest

import numpy as np

from src.core.linalg import distance_up_to_global_phase
from src.core.states import QuantumState
from src.experiments import RunOptions, run_experiment
from src.experiments.acceptance import midpoint_error_estimate, random_field, random_two_qubit
from src.physics.evolve import exact_propagator, propagate_stepped
from src.physics.model import FieldConfig, TwoQubitConfig
from src.physics.schedule import PulseSchedule, PulseSegment


class RandomDrawTests(unittest.TestCase):
    def test_draws_are_seeded(self) -> None:
        a = random_two_qubit(np.random.default_rng(7))
        b = random_two_qubit(np.random.default_rng(7))
        self.assertEqual(a, b)

    def test_field_ranges(self) -> None:
        rng = np.random.default_rng(8)
        for _ in range(50):
            cfg = random_field(rng)
            self.assertGreaterEqual(cfg.B1, 0.3)
            self.assertGreaterEqual(abs(cfg.omega), 1.0)
            self.assertLessEqual(cfg.chi, np.pi / 2)


class StepErrorEstimateTests(unittest.TestCase):
    def _distance(self, cfg, steps: int) -> float:
        f = cfg.field if isinstance(cfg, TwoQubitConfig) else cfg
        dim = 4 if isinstance(cfg, TwoQubitConfig) else 2
        schedule = PulseSchedule(segments=[PulseSegment.linear_cycle(f.omega)])
        stepped = propagate_stepped(cfg, schedule, QuantumState.basis("u" * (dim // 2)), steps)
        return distance_up_to_global_phase(stepped.cycle_unitary, exact_propagator(cfg, f.period))

    def test_estimate_bounds_stepped_error(self) -> None:
        single = FieldConfig(B0=0.8, B1=1.2, omega=1.5, kappa=-1.3, chi=0.4)
        two = TwoQubitConfig(field=FieldConfig(B0=-0.6, B1=0.9, omega=2.0), kappa_alpha=1.0,
                             kappa_beta=1.4, J=-0.7)
        for cfg in (single, two):
            with self.subTest(cfg=type(cfg).__name__):
                self.assertLessEqual(self._distance(cfg, 2000), midpoint_error_estimate(cfg, 2000))

    def test_estimate_scales_with_step_count(self) -> None:
        cfg = FieldConfig(B0=0.3, B1=1.0, omega=2.0, kappa=1.0)
        ratio = midpoint_error_estimate(cfg, 1000) / midpoint_error_estimate(cfg, 2000)
        self.assertAlmostEqual(ratio, 4.0)


class SuiteTests(unittest.TestCase):
    def test_propagator_check(self) -> None:
        for seed in (0, 1):
            with self.subTest(seed=seed):
                report = run_experiment("propagator-check", RunOptions(seed=seed))
                self.assertTrue(report.passed, msg=report.outputs["checks"])
                self.assertLessEqual(report.outputs["single_max_distance"], 1e-8)

    def test_eigen_structure(self) -> None:
        report = run_experiment("eigen-structure", RunOptions(seed=2, trials=20))
        self.assertTrue(report.passed, msg=report.outputs["checks"])

    def test_properties(self) -> None:
        report = run_experiment("properties", RunOptions(seed=3, trials=10, adiabatic_trials=1, slowness=1e-2))
        checks = report.outputs["checks"]
        for name in ("norm", "unitarity", "gauge", "makhlin"):
            self.assertTrue(checks[name], msg=name)
        self.assertLess(report.outputs["max_profile_gap"], 1e-2)
        self.assertIn("1 adiabatic trials", report.outputs["notes"][0])

    def test_two_berry_suite(self) -> None:
        report = run_experiment("two-berry-suite", RunOptions(seed=4))
        self.assertTrue(report.passed, msg=report.outputs["checks"])
        self.assertGreater(report.outputs["unequal_kappa_configs"], 0)


if __name__ == "__main__":
    unittest.main()
