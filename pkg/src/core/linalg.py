"""
Exact-size complex linear algebra for dimensions 2 and 4.

Operators, the Hermitian matrix exponential, tensor products and the
global-phase-invariant comparison metrics used by the gate layer.
"""
from math import sqrt
from typing import Tuple

import numpy as np

from config import Config
from src.core.states import Unitary, check_matrix
from src.utils.errors import DimensionMismatch, NonHermitianInput

IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# spin-1/2 operators s = sigma / 2, stacked as (x, y, z)
SPIN = np.stack([PAULI_X, PAULI_Y, PAULI_Z]) / 2.0
SPIN_ALPHA = np.stack([np.kron(s, IDENTITY2) for s in SPIN])
SPIN_BETA = np.stack([np.kron(IDENTITY2, s) for s in SPIN])
TOTAL_SZ = SPIN_ALPHA[2] + SPIN_BETA[2]
EXCHANGE = sum(SPIN_ALPHA[k] @ SPIN_BETA[k] for k in range(3))  # s_alpha . s_beta

# Bell "magic" basis
MAGIC = 1.0 / sqrt(2) * np.array([
    [1, 0, 0, 1j],
    [0, 1j, 1, 0],
    [0, 1j, -1, 0],
    [1, 0, 0, -1j]], dtype=complex)


def rotation_y(angle: float) -> np.ndarray:
    """Spin-1/2 rotation exp(-i angle sigma_y / 2)."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def spin_dot(vector, spin: np.ndarray = SPIN) -> np.ndarray:
    """s . v for a 3-vector v (or a stack of them, shape (..., 3))."""
    v = np.asarray(vector, dtype=float)
    return np.tensordot(v, spin, axes=([-1], [0]))


def hermiticity_defect(h: np.ndarray) -> float:
    return float(np.linalg.norm(h - h.conj().T))


def expm_hermitian_generator(h, t: float) -> Unitary:
    """
    exp(-i H t) for Hermitian H via eigendecomposition.

    Args:
        h: Hermitian 2x2 or 4x4 matrix
        t: evolution time

    Returns:
        Unitary with its unitarity defect

    Raises:
        NonHermitianInput: if ||H - H^dagger||_F exceeds Config.HERMITIAN_TOL
    """
    h = check_matrix(h)
    if not np.isfinite(t):
        raise ValueError(f"evolution time must be finite, got {t!r}")
    if hermiticity_defect(h) > Config.HERMITIAN_TOL:
        raise NonHermitianInput(f"generator is not Hermitian (defect {hermiticity_defect(h):.3e})")
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return Unitary.from_matrix((v * np.exp(-1j * w * t)) @ v.conj().T)


def expm_hermitian_batch(hs: np.ndarray, dts) -> np.ndarray:
    """exp(-i H_k dt_k) for a stack of Hermitian matrices, shape (N, d, d)."""
    w, v = np.linalg.eigh(hs)
    phases = np.exp(-1j * w * np.asarray(dts, dtype=float).reshape(-1, 1))
    return np.einsum("nij,nj,nkj->nik", v, phases, v.conj())


def tensor(a: Unitary, b: Unitary) -> Unitary:
    """Kronecker product a (alpha, left factor) with b (beta)."""
    if a.dim != 2 or b.dim != 2:
        raise DimensionMismatch(f"tensor expects two single-qubit unitaries, got dims {a.dim}, {b.dim}")
    return Unitary.from_matrix(np.kron(a.matrix, b.matrix))


def distance_up_to_global_phase(u: Unitary, v: Unitary) -> float:
    """
    sqrt(2n - 2|tr(U^dagger V)|) / sqrt(2n), in [0, 1]; zero iff U = e^{i phi} V.
    """
    if u.dim != v.dim:
        raise DimensionMismatch(f"cannot compare dim {u.dim} with dim {v.dim}")
    # equals sqrt(2n - 2|tr|) but keeps full precision near zero
    phase = np.exp(1j * global_phase_between(u, v))
    return float(np.linalg.norm(u.matrix - phase * v.matrix) / sqrt(2 * u.dim))


def global_phase_between(u: Unitary, v: Unitary) -> float:
    """Phase phi minimizing ||U - e^{i phi} V||_F."""
    return float(np.angle(np.trace(v.matrix.conj().T @ u.matrix)))


def makhlin_invariants(u: Unitary) -> Tuple[complex, float]:
    """
    Local invariants (G1, G2) of a two-qubit unitary, computed in the magic basis.

    Identity class: (1, 3); CNOT/CZ class: (0, 1).
    """
    if u.dim != 4:
        raise DimensionMismatch("Makhlin invariants need a two-qubit unitary")
    um = MAGIC.conj().T @ u.matrix @ MAGIC
    det_um = np.linalg.det(um)
    m = um.T @ um
    tr2 = np.trace(m) ** 2
    g1 = tr2 / (16 * det_um)
    g2 = (tr2 - np.trace(m @ m)) / (4 * det_um)
    return complex(g1), float(g2.real)
