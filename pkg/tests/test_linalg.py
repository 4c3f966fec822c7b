"""
Linear algebra layer: states, unitaries, the Hermitian exponential and local invariants.

Run:

    python -m unittest tests.test_linalg
"""
from __future__ import annotations

import unittest

import numpy as np
from scipy.linalg import expm
from scipy.stats import unitary_group

from src.core.linalg import (
    EXCHANGE,
    IDENTITY4,
    PAULI_X,
    distance_up_to_global_phase,
    expm_hermitian_batch,
    expm_hermitian_generator,
    global_phase_between,
    makhlin_invariants,
    rotation_y,
    tensor,
)
from src.core.states import QuantumState, Unitary, gauge_fix
from src.gates.targets import CNOT, CZ, SWAP
from src.utils.errors import DimensionMismatch, NonFiniteEntries, NonHermitianInput, NotNormalized, NotUnitary


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


class StateTests(unittest.TestCase):
    def test_basis_labels(self) -> None:
        self.assertEqual(QuantumState.basis("d").amplitudes.tolist(), [0, 1])
        self.assertEqual(int(np.argmax(np.abs(QuantumState.basis("du").amplitudes))), 2)
        with self.assertRaises(ValueError):
            QuantumState.basis("x")

    def test_rejects_bad_amplitudes(self) -> None:
        with self.assertRaises(NotNormalized):
            QuantumState(np.array([1.0, 1.0]))
        with self.assertRaises(DimensionMismatch):
            QuantumState(np.array([1.0, 0.0, 0.0]))
        with self.assertRaises(NonFiniteEntries):
            QuantumState(np.array([np.nan, 0.0]))
        with self.assertRaises(NotNormalized):
            QuantumState.from_amplitudes([0.0, 0.0])

    def test_from_amplitudes_drift_limit(self) -> None:
        state = QuantumState.from_amplitudes([3.0, 4.0j])
        self.assertAlmostEqual(float(np.linalg.norm(state.amplitudes)), 1.0, places=14)
        with self.assertRaises(NotNormalized):
            QuantumState.from_amplitudes([1.1, 0.0], drift_tol=1e-9)

    def test_gauge_fix_makes_first_amplitude_real(self) -> None:
        v = gauge_fix(np.exp(0.7j) * np.array([0.6, 0.8j]))
        self.assertAlmostEqual(v[0].imag, 0.0, places=15)
        self.assertGreater(v[0].real, 0.0)

    def test_unitary_validation(self) -> None:
        with self.assertRaises(NotUnitary):
            Unitary.from_matrix(2 * np.eye(2))
        with self.assertRaises(DimensionMismatch):
            Unitary.identity(2) @ Unitary.identity(4)


class ExponentialTests(unittest.TestCase):
    def test_matches_scipy_expm(self) -> None:
        rng = np.random.default_rng(1)
        for dim in (2, 4):
            for _ in range(5):
                h = random_hermitian(rng, dim)
                t = rng.uniform(-3, 3)
                u = expm_hermitian_generator(h, t)
                np.testing.assert_allclose(u.matrix, expm(-1j * h * t), atol=1e-12)
                self.assertLess(u.unitarity_defect, 1e-12)

    def test_batch_matches_single(self) -> None:
        rng = np.random.default_rng(2)
        hs = np.stack([random_hermitian(rng, 4) for _ in range(3)])
        dts = [0.1, 0.5, 2.0]
        batch = expm_hermitian_batch(hs, dts)
        for h, dt, u in zip(hs, dts, batch):
            np.testing.assert_allclose(u, expm(-1j * h * dt), atol=1e-12)

    def test_rejects_non_hermitian(self) -> None:
        with self.assertRaises(NonHermitianInput):
            expm_hermitian_generator(np.array([[0, 1], [0, 0]]), 1.0)

    def test_exchange_at_pi_is_swap(self) -> None:
        u = expm_hermitian_generator(EXCHANGE, np.pi)
        self.assertLess(distance_up_to_global_phase(u, SWAP), 1e-12)


class MetricTests(unittest.TestCase):
    def test_distance_ignores_global_phase(self) -> None:
        u = Unitary.from_matrix(unitary_group.rvs(4, random_state=3))
        self.assertLess(distance_up_to_global_phase(u, u.scaled(np.exp(1.3j))), 1e-7)
        self.assertAlmostEqual(global_phase_between(u.scaled(np.exp(1.3j)), u), 1.3, places=10)

    def test_distance_range(self) -> None:
        x = Unitary.from_matrix(PAULI_X)
        self.assertAlmostEqual(distance_up_to_global_phase(x, Unitary.identity(2)), 1.0, places=12)
        with self.assertRaises(DimensionMismatch):
            distance_up_to_global_phase(x, CNOT)

    def test_rotation_y(self) -> None:
        r = rotation_y(np.pi)
        np.testing.assert_allclose(r @ np.array([1, 0]), [0, 1], atol=1e-15)

    def test_makhlin_classes(self) -> None:
        for gate in (CNOT, CZ):
            g1, g2 = makhlin_invariants(gate)
            self.assertAlmostEqual(abs(g1), 0.0, places=12)
            self.assertAlmostEqual(g2, 1.0, places=12)
        g1, g2 = makhlin_invariants(Unitary.from_matrix(IDENTITY4))
        self.assertAlmostEqual(g1, 1.0, places=12)
        self.assertAlmostEqual(g2, 3.0, places=12)

    def test_makhlin_local_invariance(self) -> None:
        rng = np.random.default_rng(4)
        u = Unitary.from_matrix(unitary_group.rvs(4, random_state=rng))
        a = Unitary.from_matrix(unitary_group.rvs(2, random_state=rng))
        b = Unitary.from_matrix(unitary_group.rvs(2, random_state=rng))
        local = tensor(a, b)
        g1, g2 = makhlin_invariants(u)
        h1, h2 = makhlin_invariants(local @ u @ local.dagger())
        self.assertAlmostEqual(abs(g1 - h1), 0.0, places=9)
        self.assertAlmostEqual(g2, h2, places=9)


if __name__ == "__main__":
    unittest.main()
