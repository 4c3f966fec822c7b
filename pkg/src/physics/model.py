"""
Spin Hamiltonians under a rotating Zeeman field and their analytic eigensystems.

Single spin:  h(t) = -kappa s . B(t),  B(t) = (B1 cos phi, B1 sin phi, B0)
Two spins:    H(t) = h_alpha + h_beta + J s_alpha . s_beta
Rotating frame (phi = phi0 + omega t): h~ = h(0) - omega s_z, H~ = H(0) - omega S_z.

A tilt chi conjugates every Hamiltonian with the spin rotation R_y(chi):
H_chi = R_y(chi)^dagger H R_y(chi).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.optimize import linear_sum_assignment

from src.core.linalg import (
    EXCHANGE,
    SPIN,
    SPIN_ALPHA,
    SPIN_BETA,
    TOTAL_SZ,
    rotation_y,
    spin_dot,
)
from src.core.states import QuantumState, gauge_fix
from src.utils.errors import DegenerateExchange, ZeroField
from src.utils.logger import get_logger

logger = get_logger(__name__)


class FieldConfig(BaseModel):
    """Rotating Zeeman drive acting on one spin."""

    model_config = ConfigDict(frozen=True)

    B0: float
    B1: float
    omega: float = 0.0
    kappa: float = 1.0
    chi: float = 0.0
    phi0: float = 0.0

    @field_validator("B1")
    @classmethod
    def _b1_nonnegative(cls, v: float) -> float:
        if v < 0:
            raise ValueError("B1 must be >= 0; absorb the sign into phi0")
        return v

    @field_validator("kappa")
    @classmethod
    def _kappa_nonzero(cls, v: float) -> float:
        if v == 0:
            raise ValueError("kappa must be nonzero")
        return v

    @property
    def B(self) -> float:
        return float(np.hypot(self.B0, self.B1))

    @property
    def theta(self) -> float:
        """Polar angle of B, in [0, pi]."""
        return float(np.arctan2(self.B1, self.B0))

    @property
    def B0_tilde(self) -> float:
        return self.B0 + self.omega / self.kappa

    @property
    def B_tilde(self) -> float:
        return float(np.hypot(self.B0_tilde, self.B1))

    @property
    def theta_tilde(self) -> float:
        """Polar angle of the rotating-frame field (B1, 0, B0 + omega/kappa), in [0, pi]."""
        return float(np.arctan2(self.B1, self.B0_tilde))

    @property
    def period(self) -> float:
        """tau = 2 pi / |omega|"""
        if self.omega == 0:
            raise ValueError("period undefined for omega = 0")
        return float(2 * np.pi / abs(self.omega))

    def phi_at(self, t):
        return self.phi0 + self.omega * np.asarray(t, dtype=float)

    def field_vector(self, phi) -> np.ndarray:
        """Untilted field B(phi), shape (..., 3)."""
        phi = np.asarray(phi, dtype=float)
        return np.stack([self.B1 * np.cos(phi), self.B1 * np.sin(phi),
                         np.full_like(phi, self.B0)], axis=-1)

    def with_kappa(self, kappa: float) -> "FieldConfig":
        return self.model_copy(update={"kappa": kappa})

    def untilted(self) -> "FieldConfig":
        return self.model_copy(update={"chi": 0.0})


class TwoQubitConfig(BaseModel):
    """Two Heisenberg-coupled spins sharing one drive."""

    model_config = ConfigDict(frozen=True)

    field: FieldConfig
    kappa_alpha: float
    kappa_beta: float
    J: float

    @field_validator("kappa_alpha", "kappa_beta")
    @classmethod
    def _kappas_nonzero(cls, v: float) -> float:
        if v == 0:
            raise ValueError("gyromagnetic ratios must be nonzero")
        return v

    @property
    def equal_kappa(self) -> bool:
        return self.kappa_alpha == self.kappa_beta

    def field_for(self, which: str) -> FieldConfig:
        """Single-spin view of the drive with the given qubit's kappa."""
        return self.field.with_kappa(self.kappa_alpha if which == "alpha" else self.kappa_beta)

    def with_J(self, J: float) -> "TwoQubitConfig":
        return self.model_copy(update={"J": J})


AnyConfig = Union[FieldConfig, TwoQubitConfig]


@dataclass
class EigenSystem:
    """Energies and eigenstates, indexed by construction order (not sorted)."""

    energies: np.ndarray
    states: List[QuantumState]
    degenerate: bool = False

    @property
    def matrix(self) -> np.ndarray:
        """Eigenstates as columns."""
        return np.stack([s.amplitudes for s in self.states], axis=1)


def dimension(cfg: AnyConfig) -> int:
    return 4 if isinstance(cfg, TwoQubitConfig) else 2


def drive(cfg: AnyConfig) -> FieldConfig:
    return cfg.field if isinstance(cfg, TwoQubitConfig) else cfg


def tilt_operator(cfg: AnyConfig, chi: Optional[float] = None) -> np.ndarray:
    """R_y(chi), or R_y(chi) x R_y(chi) for two spins."""
    angle = drive(cfg).chi if chi is None else chi
    r = rotation_y(angle)
    return np.kron(r, r) if isinstance(cfg, TwoQubitConfig) else r


def _tilted(h: np.ndarray, r: np.ndarray) -> np.ndarray:
    return r.conj().T @ h @ r


def hamiltonian_at(cfg: AnyConfig, phi, sign: int = 1, chi: Optional[float] = None) -> np.ndarray:
    """
    Hamiltonian with the field at rotation angle phi (scalar or array).

    sign flips the field (echo reversal); the exchange term is unaffected.
    Returns shape (..., d, d).
    """
    b = sign * drive(cfg).field_vector(phi)
    if isinstance(cfg, TwoQubitConfig):
        h = (-cfg.kappa_alpha * spin_dot(b, SPIN_ALPHA)
             - cfg.kappa_beta * spin_dot(b, SPIN_BETA)
             + cfg.J * EXCHANGE)
    else:
        h = -cfg.kappa * spin_dot(b, SPIN)
    return _tilted(h, tilt_operator(cfg, chi))


def hamiltonian_single(cfg: FieldConfig, t: float) -> np.ndarray:
    """-kappa s . B(t) with phi(t) = phi0 + omega t."""
    return hamiltonian_at(cfg, cfg.phi_at(t))


def hamiltonian_two(cfg: TwoQubitConfig, t: float) -> np.ndarray:
    """h_alpha + h_beta + J s_alpha . s_beta at time t."""
    return hamiltonian_at(cfg, cfg.field.phi_at(t))


def rotating_frame_hamiltonian(cfg: AnyConfig) -> np.ndarray:
    """
    Time-independent generator of the rotating-frame solution.

    Single: -kappa s . (B1 cos phi0, B1 sin phi0, B0 + omega/kappa).
    Two:    H(0) - omega (s^alpha_z + s^beta_z).
    """
    f = drive(cfg)
    if isinstance(cfg, TwoQubitConfig):
        h0 = hamiltonian_at(cfg, f.phi0, chi=0.0)
        return _tilted(h0 - f.omega * TOTAL_SZ, tilt_operator(cfg))
    h = hamiltonian_at(cfg, f.phi0, chi=0.0) - f.omega * SPIN[2]
    return _tilted(h, tilt_operator(cfg))


def spin_states(theta: float, phi) -> np.ndarray:
    """
    Spin-up/down states along (theta, phi) in the explicit gauge
    |up> = cos(theta/2)|u> + sin(theta/2) e^{i phi}|d>,
    |down> = sin(theta/2)|u> - cos(theta/2) e^{i phi}|d>.

    Returns shape (2, ..., 2): [up, down].
    """
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    up = np.stack([np.full(phi.shape, c, dtype=complex), s * e], axis=-1)
    down = np.stack([np.full(phi.shape, s, dtype=complex), -c * e], axis=-1)
    return np.stack([up, down])


def _exchange_coefficients(delta_kappa_b: float, J: float):
    """
    Coefficients of |ud> in xi_2 (upper level) and xi_3 (lower level).

    The pair multiplies to -1. For J < 0 the sqrt(r^2+1) - r root belongs
    to the lower level, so the two are exchanged.
    """
    r = delta_kappa_b / J
    root = np.hypot(r, 1.0)
    if r >= 0:
        x_minus = -(r + root)
        x_plus = -1.0 / x_minus
    else:
        x_plus = root - r
        x_minus = -1.0 / x_plus
    if J < 0:
        return x_minus, x_plus
    return x_plus, x_minus


def two_spin_states(theta: float, phi, kappa_alpha: float, kappa_beta: float, J: float,
                    B: float, allow_degenerate: bool = False):
    """
    (xi_1, xi_2, xi_3, xi_4) along the field direction (theta, phi).

    Returns (states of shape (4, ..., 4), degenerate flag).
    """
    up, down = spin_states(theta, phi)

    def pair(a, b):
        return np.einsum("...i,...j->...ij", a, b).reshape(a.shape[:-1] + (4,))

    uu, ud, du, dd = pair(up, up), pair(up, down), pair(down, up), pair(down, down)
    delta_kappa_b = (kappa_alpha - kappa_beta) * B
    degenerate = False
    if J != 0:
        x_plus, x_minus = _exchange_coefficients(delta_kappa_b, J)
        xi2 = (x_plus * ud + du) / np.hypot(x_plus, 1.0)
        xi3 = (x_minus * ud + du) / np.hypot(x_minus, 1.0)
    elif delta_kappa_b != 0:
        # decoupled: the higher-energy product state is xi_2
        xi2, xi3 = (du, ud) if delta_kappa_b > 0 else (ud, du)
    else:
        if not allow_degenerate:
            raise DegenerateExchange("J = 0 with equal kappas leaves xi_2, xi_3 degenerate")
        degenerate = True
        xi2 = (ud + du) / np.sqrt(2)
        xi3 = (ud - du) / np.sqrt(2)
    return np.stack([uu, xi2, xi3, dd]), degenerate


def two_spin_energies(kappa_alpha: float, kappa_beta: float, J: float, B: float) -> np.ndarray:
    """E_1..E_4 in construction order."""
    ks = kappa_alpha + kappa_beta
    split = 0.5 * np.hypot((kappa_alpha - kappa_beta) * B, J)
    return np.array([
        -0.5 * ks * B + J / 4,
        -J / 4 + split,
        -J / 4 - split,
        0.5 * ks * B + J / 4,
    ])


def _as_eigensystem(vectors: np.ndarray, energies, r: np.ndarray, degenerate: bool = False) -> EigenSystem:
    states = [QuantumState.from_amplitudes(gauge_fix(r.conj().T @ v)) for v in vectors]
    return EigenSystem(np.asarray(energies, dtype=float), states, degenerate)


def eigensystem_single(cfg: FieldConfig, t: float) -> EigenSystem:
    """Instantaneous {|up_B(t)>, |down_B(t)>} with energies -/+ kappa B / 2."""
    if cfg.B == 0:
        raise ZeroField("field direction undefined for B0 = B1 = 0")
    vectors = spin_states(cfg.theta, cfg.phi_at(t))
    energies = [-cfg.kappa * cfg.B / 2, cfg.kappa * cfg.B / 2]
    return _as_eigensystem(vectors, energies, tilt_operator(cfg))


def eigensystem_two(cfg: TwoQubitConfig, t: float, allow_degenerate: bool = False) -> EigenSystem:
    """Instantaneous (xi_1, xi_2, xi_3, xi_4) and (E_1, E_2, E_3, E_4)."""
    f = cfg.field
    if f.B == 0:
        raise ZeroField("field direction undefined for B0 = B1 = 0")
    vectors, degenerate = two_spin_states(f.theta, f.phi_at(t), cfg.kappa_alpha, cfg.kappa_beta,
                                          cfg.J, f.B, allow_degenerate)
    energies = two_spin_energies(cfg.kappa_alpha, cfg.kappa_beta, cfg.J, f.B)
    return _as_eigensystem(vectors, energies, tilt_operator(cfg), degenerate)


def eigensystem_rotating(cfg: AnyConfig, allow_degenerate: bool = False) -> EigenSystem:
    """
    Eigenstates of the rotating-frame generator: |sigma_B~> for one spin,
    eta_1..eta_4 for two spins.

    Equal kappas use the analytic form along B~; unequal kappas are
    diagonalized numerically and labelled by best overlap with the
    equal-kappa reference states built from the mean kappa.
    """
    f = drive(cfg)
    r = tilt_operator(cfg)
    if isinstance(cfg, FieldConfig):
        if cfg.B_tilde == 0:
            raise ZeroField("rotating-frame field vanishes")
        vectors = spin_states(cfg.theta_tilde, cfg.phi0)
        energies = [-cfg.kappa * cfg.B_tilde / 2, cfg.kappa * cfg.B_tilde / 2]
        return _as_eigensystem(vectors, energies, r)

    if cfg.equal_kappa:
        ft = f.with_kappa(cfg.kappa_alpha)
        if ft.B_tilde == 0:
            raise ZeroField("rotating-frame field vanishes")
        vectors, degenerate = two_spin_states(ft.theta_tilde, ft.phi0, cfg.kappa_alpha, cfg.kappa_beta,
                                              cfg.J, ft.B_tilde, allow_degenerate)
        energies = two_spin_energies(cfg.kappa_alpha, cfg.kappa_beta, cfg.J, ft.B_tilde)
        return _as_eigensystem(vectors, energies, r, degenerate)

    h = rotating_frame_hamiltonian(cfg)
    w, v = np.linalg.eigh(h)
    mean = f.with_kappa(0.5 * (cfg.kappa_alpha + cfg.kappa_beta))
    reference, _ = two_spin_states(mean.theta_tilde, mean.phi0, 1.0, 1.0, 1.0, 1.0)
    reference = reference @ r.conj()  # rows become R^dagger x
    cost = -np.abs(reference.conj() @ v) ** 2
    rows, cols = linear_sum_assignment(cost)
    order = cols[np.argsort(rows)]
    logger.debug(f"unequal-kappa eta labelling: {order.tolist()}")
    states = [QuantumState.from_amplitudes(gauge_fix(v[:, j])) for j in order]
    return EigenSystem(w[order], states)


def qubit_basis(cfg: FieldConfig, rotating: bool = False) -> np.ndarray:
    """Field-aligned qubit basis (columns), along (B1,0,B0) or (B1,0,B0+omega/kappa), untilted."""
    f = cfg.untilted()
    if rotating:
        if f.B_tilde == 0:
            raise ZeroField("rotating-frame field vanishes")
        up, down = spin_states(f.theta_tilde, f.phi0)
    else:
        if f.B == 0:
            raise ZeroField("field direction undefined for B0 = B1 = 0")
        up, down = spin_states(f.theta, f.phi0)
    return np.stack([up, down], axis=1)


def qubit_basis_two(cfg: TwoQubitConfig, rotating: bool = False) -> np.ndarray:
    """Product qubit basis; in the rotating frame each spin is aligned with its own B~_j."""
    qa = qubit_basis(cfg.field_for("alpha"), rotating)
    qb = qubit_basis(cfg.field_for("beta"), rotating)
    return np.kron(qa, qb)


def min_gap(energies: np.ndarray, index: Optional[int] = None) -> float:
    """Smallest level spacing (involving index, if given)."""
    e = np.asarray(energies, dtype=float)
    if index is None:
        diffs = np.abs(e[:, None] - e[None, :])[~np.eye(len(e), dtype=bool)]
    else:
        diffs = np.abs(np.delete(e, index) - e[index])
    return float(diffs.min())


def instantaneous_states(cfg: AnyConfig, phis: np.ndarray, allow_degenerate: bool = False) -> np.ndarray:
    """Eigenstates along a grid of field angles, shape (d, N, d), tilt included."""
    f = drive(cfg)
    if f.B == 0:
        raise ZeroField("field direction undefined for B0 = B1 = 0")
    if isinstance(cfg, TwoQubitConfig):
        vectors, _ = two_spin_states(f.theta, phis, cfg.kappa_alpha, cfg.kappa_beta, cfg.J, f.B,
                                     allow_degenerate)
    else:
        vectors = spin_states(f.theta, phis)
    return vectors @ tilt_operator(cfg).conj()


def instantaneous_energies(cfg: AnyConfig) -> np.ndarray:
    f = drive(cfg)
    if isinstance(cfg, TwoQubitConfig):
        return two_spin_energies(cfg.kappa_alpha, cfg.kappa_beta, cfg.J, f.B)
    return np.array([-cfg.kappa * f.B / 2, cfg.kappa * f.B / 2])
