"""
Value types for the dense 2- and 4-dimensional linear algebra layer.

Basis ordering is fixed: |up> precedes |down>, and qubit alpha is the left
tensor factor, so the 4-dim ordering is |uu>, |ud>, |du>, |dd>.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from config import Config
from src.utils.errors import DimensionMismatch, NonFiniteEntries, NotNormalized, NotUnitary

ALLOWED_DIMS = (2, 4)

# ComplexMatrix is a plain (dim, dim) complex ndarray validated by check_matrix.
ComplexMatrix = np.ndarray

_LABELS: Dict[str, int] = {
    "u": 0, "d": 1,
    "uu": 0, "ud": 1, "du": 2, "dd": 3,
}


def check_matrix(m, dim: Optional[int] = None) -> np.ndarray:
    """Return m as a finite complex square matrix of dimension 2 or 4."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in ALLOWED_DIMS:
        raise DimensionMismatch(f"expected a 2x2 or 4x4 matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntries("matrix contains NaN or Inf entries")
    return arr


def gauge_fix(vec: np.ndarray, atol: float = 1e-14) -> np.ndarray:
    """Multiply vec by a phase so its first nonzero amplitude is real positive."""
    v = np.asarray(vec, dtype=complex)
    for amp in v:
        if abs(amp) > atol:
            return v * (abs(amp) / amp)
    return v


@dataclass(frozen=True)
class QuantumState:
    """Normalized amplitude vector in the lab z-basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] not in ALLOWED_DIMS:
            raise DimensionMismatch(f"state dimension must be 2 or 4, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise NonFiniteEntries("state contains NaN or Inf amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > Config.NORM_TOL:
            raise NotNormalized(f"state norm {norm!r} differs from 1 by more than {Config.NORM_TOL}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amps, drift_tol: Optional[float] = None) -> "QuantumState":
        """Normalize amps; if drift_tol is given, the input norm must already be within it."""
        vec = np.asarray(amps, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise NotNormalized("cannot normalize the zero vector")
        if drift_tol is not None and abs(norm - 1.0) > drift_tol:
            raise NotNormalized(f"norm drifted to {norm!r}, beyond {drift_tol}")
        return cls(vec / norm)

    @classmethod
    def basis(cls, label: str) -> "QuantumState":
        """Computational basis state from a label such as 'u', 'd', 'ud'."""
        if label not in _LABELS:
            raise ValueError(f"unknown basis label {label!r}")
        vec = np.zeros(2 ** len(label), dtype=complex)
        vec[_LABELS[label]] = 1.0
        return cls(vec)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "QuantumState") -> complex:
        """<self|other>"""
        if other.dim != self.dim:
            raise DimensionMismatch(f"overlap of dim {self.dim} with dim {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def expectation(self, op: np.ndarray) -> float:
        """<self|op|self> for Hermitian op"""
        op = check_matrix(op, self.dim)
        return float(np.real(np.vdot(self.amplitudes, op @ self.amplitudes)))


@dataclass(frozen=True)
class Unitary:
    """Unitary matrix with its unitarity certificate."""

    matrix: np.ndarray
    unitarity_defect: float = field(default=0.0)

    @classmethod
    def from_matrix(cls, m, tol: Optional[float] = None) -> "Unitary":
        arr = check_matrix(m)
        defect = float(np.linalg.norm(arr.conj().T @ arr - np.eye(arr.shape[0])))
        limit = Config.UNITARITY_TOL if tol is None else tol
        if defect > limit:
            raise NotUnitary(f"unitarity defect {defect:.3e} exceeds {limit:.1e}")
        return cls(arr, defect)

    @classmethod
    def identity(cls, dim: int) -> "Unitary":
        return cls.from_matrix(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "Unitary":
        return Unitary.from_matrix(self.matrix.conj().T)

    def __matmul__(self, other: "Unitary") -> "Unitary":
        if not isinstance(other, Unitary):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot compose dim {self.dim} with dim {other.dim}")
        return Unitary.from_matrix(self.matrix @ other.matrix)

    def power(self, n: int) -> "Unitary":
        return Unitary.from_matrix(np.linalg.matrix_power(self.matrix, n))

    def scaled(self, phase: complex) -> "Unitary":
        """Multiply by a unit-modulus scalar (global phase)."""
        return Unitary.from_matrix(phase * self.matrix)

    def apply(self, state: QuantumState) -> QuantumState:
        if state.dim != self.dim:
            raise DimensionMismatch(f"cannot apply dim {self.dim} unitary to dim {state.dim} state")
        return QuantumState.from_amplitudes(self.matrix @ state.amplitudes,
                                            drift_tol=Config.NORM_DRIFT_TOL)

    def in_basis(self, basis: np.ndarray) -> "Unitary":
        """Express in the orthonormal basis given by the columns of basis."""
        q = check_matrix(basis, self.dim)
        return Unitary.from_matrix(q.conj().T @ self.matrix @ q)
