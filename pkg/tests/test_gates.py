"""
Single-qubit Berry and AA gate solvers and builders.

Run:

    python -m unittest tests.test_gates
"""
from __future__ import annotations

import unittest
from dataclasses import replace

import numpy as np

from src.core.linalg import distance_up_to_global_phase
from src.experiments.gate_experiments import aa_exact_gate
from src.gates.single import (
    build_geometric_gate,
    rotated_basis_gate,
    solve_aa_gate,
    solve_berry_gate,
)
from src.gates.targets import HADAMARD, PI_OVER_8, GateSpec, GateTarget, Mechanism
from src.physics.model import FieldConfig
from src.utils.errors import BasisUndefined, Unreachable

PI8_BERRY = GateSpec(GateTarget.PI_OVER_8, Mechanism.BERRY_ECHO)
PI8_AA = GateSpec(GateTarget.PI_OVER_8, Mechanism.AA_ZERO_DYNAMICAL)
HADAMARD_AA = GateSpec(GateTarget.HADAMARD, Mechanism.AA_ZERO_DYNAMICAL)


class GateSpecTests(unittest.TestCase):
    def test_named_and_custom_targets(self) -> None:
        self.assertEqual(PI8_BERRY.dim, 2)
        self.assertIs(PI8_BERRY.unitary, PI_OVER_8)
        custom = GateSpec(GateTarget.CUSTOM, Mechanism.AA_ZERO_DYNAMICAL, custom=np.eye(2))
        self.assertEqual(custom.dim, 2)
        with self.assertRaises(ValueError):
            GateSpec(GateTarget.CUSTOM, Mechanism.BERRY_ECHO)
        with self.assertRaises(ValueError):
            GateSpec(GateTarget.CNOT, Mechanism.HYBRID_SEQUENCE, custom=np.eye(4))

    def test_rotated_basis_gate(self) -> None:
        np.testing.assert_allclose(rotated_basis_gate(np.pi / 2, np.pi / 4).matrix, 1j * HADAMARD.matrix,
                                   atol=1e-15)
        self.assertLess(distance_up_to_global_phase(rotated_basis_gate(-np.pi / 8), PI_OVER_8), 1e-15)


class BerrySolverTests(unittest.TestCase):
    def test_pi8_ratio(self) -> None:
        params = solve_berry_gate(-np.pi / 8)
        self.assertAlmostEqual(params.field.B0 / params.field.B1, -1 / np.sqrt(255), places=12)
        self.assertLess(params.max_residual, 1e-12)
        self.assertEqual([s.field_sign for s in params.schedule.segments], [1, -1])

    def test_hadamard_ratio(self) -> None:
        params = solve_berry_gate(np.pi / 2, chi=np.pi / 4)
        self.assertAlmostEqual(params.field.B0 / params.field.B1, 1 / np.sqrt(15), places=12)
        build = build_geometric_gate(GateSpec(GateTarget.HADAMARD, Mechanism.BERRY_ECHO), params)
        self.assertLess(build.distance, 1e-12)

    def test_unreachable(self) -> None:
        with self.assertRaises(Unreachable):
            solve_berry_gate(2 * np.pi)
        with self.assertRaises(ValueError):
            solve_berry_gate(0.3, B1=0.0)

    def test_simulated_echo_gate(self) -> None:
        params = solve_berry_gate(-np.pi / 8, slowness=0.01)
        build = build_geometric_gate(PI8_BERRY, params, "simulated", slowness=0.01)
        self.assertLess(build.distance, 0.05)
        self.assertLess(build.leakage, 1e-2)

    def test_hadamard_needs_tilt(self) -> None:
        params = solve_berry_gate(np.pi / 2)
        with self.assertRaises(ValueError):
            build_geometric_gate(GateSpec(GateTarget.HADAMARD, Mechanism.BERRY_ECHO), params)


class AASolverTests(unittest.TestCase):
    def test_pi8_ratio_and_zero_dynamical_phase(self) -> None:
        params = solve_aa_gate(-np.pi / 8, kappa=-1.0)
        cfg = params.field
        self.assertEqual(params.branch, "direct")
        self.assertAlmostEqual(cfg.B0_tilde / cfg.B1, -1 / np.sqrt(63), places=12)
        self.assertLess(params.residuals["field_equation"], 1e-12)
        self.assertLess(params.residuals["dynamical"], 1e-9)

    def test_hadamard_ratio(self) -> None:
        params = solve_aa_gate(np.pi / 2, kappa=1.0, chi=np.pi / 4)
        self.assertAlmostEqual(params.field.B0_tilde / params.field.B1, 1 / np.sqrt(3), places=12)
        self.assertLess(distance_up_to_global_phase(aa_exact_gate(params), HADAMARD), 1e-9)
        build = build_geometric_gate(HADAMARD_AA, params)
        np.testing.assert_allclose(build.unitary.matrix, 1j * HADAMARD.matrix, atol=1e-12)

    def test_exact_period_gate(self) -> None:
        params = solve_aa_gate(-np.pi / 8, kappa=-1.0)
        self.assertLess(distance_up_to_global_phase(aa_exact_gate(params), PI_OVER_8), 1e-9)

    def test_stepped_gate(self) -> None:
        params = solve_aa_gate(-np.pi / 8, kappa=-1.0)
        build = build_geometric_gate(PI8_AA, params, "simulated", steps=20000)
        self.assertLess(build.distance, 1e-6)

    def test_shifted_branch(self) -> None:
        params = solve_aa_gate(-np.pi / 8, kappa=1.0, verify=False)
        self.assertEqual(params.branch, "shifted")
        self.assertAlmostEqual(params.predicted_gamma, -np.pi / 8 + np.pi, places=12)
        gate = rotated_basis_gate(params.predicted_gamma)
        self.assertLess(distance_up_to_global_phase(gate, PI_OVER_8), 1e-12)

    def test_unreachable(self) -> None:
        with self.assertRaises(Unreachable):
            solve_aa_gate(0.0)
        with self.assertRaises(Unreachable):
            solve_aa_gate(np.pi)

    def test_zero_field_basis(self) -> None:
        params = replace(solve_berry_gate(-np.pi / 8), field=FieldConfig(B0=0.0, B1=0.0, omega=1.0))
        with self.assertRaises(BasisUndefined):
            build_geometric_gate(PI8_BERRY, params)


if __name__ == "__main__":
    unittest.main()
