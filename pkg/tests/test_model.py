"""
Hamiltonians, analytic eigensystems and the rotating-frame generator.

Run:

    python -m unittest tests.test_model
"""
from __future__ import annotations

import unittest

import numpy as np
from pydantic import ValidationError

from src.core.linalg import SPIN
from src.physics.model import (
    FieldConfig,
    TwoQubitConfig,
    eigensystem_rotating,
    eigensystem_single,
    eigensystem_two,
    hamiltonian_single,
    hamiltonian_two,
    min_gap,
    qubit_basis,
    rotating_frame_hamiltonian,
    spin_states,
    two_spin_energies,
)
from src.utils.errors import DegenerateExchange, ZeroField


def two_qubit(J: float = 0.5, ka: float = 1.0, kb: float = 2.0, **field) -> TwoQubitConfig:
    params = {"B0": 0.5, "B1": 1.0, "omega": 1.0, **field}
    return TwoQubitConfig(field=FieldConfig(**params), kappa_alpha=ka, kappa_beta=kb, J=J)


class FieldConfigTests(unittest.TestCase):
    def test_derived_quantities(self) -> None:
        cfg = FieldConfig(B0=1.0, B1=1.0, omega=2.0, kappa=-1.0)
        self.assertAlmostEqual(cfg.theta, np.pi / 4)
        self.assertAlmostEqual(cfg.B0_tilde, -1.0)
        self.assertAlmostEqual(cfg.theta_tilde, 3 * np.pi / 4)
        self.assertAlmostEqual(cfg.period, np.pi)

    def test_validation(self) -> None:
        with self.assertRaises(ValidationError):
            FieldConfig(B0=0.0, B1=-1.0)
        with self.assertRaises(ValidationError):
            FieldConfig(B0=1.0, B1=1.0, kappa=0.0)
        with self.assertRaises(ValueError):
            FieldConfig(B0=1.0, B1=1.0).period


class SingleSpinTests(unittest.TestCase):
    def test_hamiltonian_is_hermitian_with_expected_spectrum(self) -> None:
        cfg = FieldConfig(B0=0.3, B1=0.8, omega=1.5, kappa=1.2, chi=0.4, phi0=0.2)
        for t in (0.0, 0.7, 3.1):
            h = hamiltonian_single(cfg, t)
            np.testing.assert_allclose(h, h.conj().T, atol=1e-15)
            np.testing.assert_allclose(np.linalg.eigvalsh(h), [-0.6 * cfg.B, 0.6 * cfg.B], atol=1e-14)

    def test_eigenstates(self) -> None:
        cfg = FieldConfig(B0=-0.4, B1=0.9, omega=1.0, kappa=-0.7, chi=0.3)
        t = 1.3
        h = hamiltonian_single(cfg, t)
        eig = eigensystem_single(cfg, t)
        for energy, state in zip(eig.energies, eig.states):
            np.testing.assert_allclose(h @ state.amplitudes, energy * state.amplitudes, atol=1e-13)

    def test_spin_states_gauge(self) -> None:
        up, down = spin_states(np.pi / 3, 0.5)
        self.assertAlmostEqual(abs(np.vdot(up, down)), 0.0, places=15)
        self.assertAlmostEqual(up[0].imag, 0.0)
        self.assertAlmostEqual(down[0].imag, 0.0)

    def test_rotating_frame_generator(self) -> None:
        cfg = FieldConfig(B0=0.5, B1=1.0, omega=2.0, kappa=1.0)
        expected = hamiltonian_single(cfg, 0.0) - cfg.omega * SPIN[2]
        np.testing.assert_allclose(rotating_frame_hamiltonian(cfg), expected, atol=1e-15)
        eig = eigensystem_rotating(cfg)
        np.testing.assert_allclose(sorted(eig.energies), [-cfg.B_tilde / 2, cfg.B_tilde / 2], atol=1e-14)

    def test_zero_field(self) -> None:
        cfg = FieldConfig(B0=0.0, B1=0.0)
        with self.assertRaises(ZeroField):
            eigensystem_single(cfg, 0.0)
        with self.assertRaises(ZeroField):
            qubit_basis(cfg)


class TwoSpinTests(unittest.TestCase):
    def test_energies_match_numerics(self) -> None:
        for ka, kb, J in ((1.0, 2.0, 0.5), (1.0, 1.0, -0.3), (0.7, 1.3, 0.0)):
            cfg = two_qubit(J=J, ka=ka, kb=kb)
            numeric = np.linalg.eigvalsh(hamiltonian_two(cfg, 0.9))
            analytic = np.sort(two_spin_energies(ka, kb, J, cfg.field.B))
            np.testing.assert_allclose(numeric, analytic, atol=1e-12)

    def test_eigenvectors_and_labels(self) -> None:
        t = 2.0
        for J, ka, kb in ((0.5, 1.0, 2.0), (-0.5, 1.0, 2.0), (-0.5, 2.0, 1.0), (-0.8, 1.0, 1.0)):
            with self.subTest(J=J, ka=ka, kb=kb):
                cfg = two_qubit(J=J, ka=ka, kb=kb, chi=0.2)
                h = hamiltonian_two(cfg, t)
                eig = eigensystem_two(cfg, t)
                for energy, state in zip(eig.energies, eig.states):
                    np.testing.assert_allclose(h @ state.amplitudes, energy * state.amplitudes, atol=1e-12)
                # xi_2 sits above xi_3
                self.assertGreater(eig.energies[1], eig.energies[2])

    def test_negative_exchange_puts_singlet_above(self) -> None:
        cfg = two_qubit(J=-0.5, ka=1.0, kb=1.0, B0=1.0, B1=0.0)
        eig = eigensystem_two(cfg, 0.0)
        singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
        self.assertAlmostEqual(abs(np.vdot(singlet, eig.states[1].amplitudes)), 1.0, places=12)
        self.assertAlmostEqual(eig.energies[1], -0.75 * cfg.J, places=12)

    def test_rotating_equal_kappa_negative_exchange(self) -> None:
        cfg = two_qubit(J=-0.6, ka=1.0, kb=1.0, omega=1.3)
        h = rotating_frame_hamiltonian(cfg)
        eig = eigensystem_rotating(cfg)
        for energy, state in zip(eig.energies, eig.states):
            np.testing.assert_allclose(h @ state.amplitudes, energy * state.amplitudes, atol=1e-12)

    def test_equal_kappa_triplet_singlet(self) -> None:
        cfg = two_qubit(J=0.5, ka=1.0, kb=1.0, B0=1.0, B1=0.0)
        eig = eigensystem_two(cfg, 0.0)
        singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
        overlaps = [abs(np.vdot(singlet, s.amplitudes)) for s in eig.states]
        self.assertAlmostEqual(max(overlaps), 1.0, places=12)
        self.assertAlmostEqual(eig.energies[int(np.argmax(overlaps))], -0.75 * cfg.J, places=12)

    def test_degenerate_exchange(self) -> None:
        cfg = two_qubit(J=0.0, ka=1.0, kb=1.0)
        with self.assertRaises(DegenerateExchange):
            eigensystem_two(cfg, 0.0)
        eig = eigensystem_two(cfg, 0.0, allow_degenerate=True)
        self.assertTrue(eig.degenerate)

    def test_decoupled_unequal_kappa(self) -> None:
        cfg = two_qubit(J=0.0, ka=1.0, kb=2.0)
        eig = eigensystem_two(cfg, 0.5)
        self.assertFalse(eig.degenerate)
        self.assertGreater(eig.energies[1], eig.energies[2])

    def test_rotating_unequal_kappa_eigenstates(self) -> None:
        cfg = two_qubit(J=0.4, ka=1.0, kb=1.6, omega=1.3)
        h = rotating_frame_hamiltonian(cfg)
        eig = eigensystem_rotating(cfg)
        for energy, state in zip(eig.energies, eig.states):
            np.testing.assert_allclose(h @ state.amplitudes, energy * state.amplitudes, atol=1e-12)

    def test_min_gap(self) -> None:
        self.assertAlmostEqual(min_gap(np.array([0.0, 1.0, 3.0])), 1.0)
        self.assertAlmostEqual(min_gap(np.array([0.0, 1.0, 3.0]), index=2), 2.0)


if __name__ == "__main__":
    unittest.main()
