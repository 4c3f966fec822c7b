"""
Phase bookkeeping for cyclic evolutions.

total = arg<psi(0)|psi(T)> resolved along the history, dynamical = -int <H> dt
on the propagation grid, geometric = total - dynamical. Berry phases are
evaluated independently from the instantaneous eigenstates with a discrete
(Pancharatnam) product around the loop.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import trapezoid

from config import Config
from src.core.linalg import TOTAL_SZ
from src.core.states import QuantumState
from src.physics.evolve import PropagationResult
from src.physics.model import (
    AnyConfig,
    FieldConfig,
    TwoQubitConfig,
    drive,
    eigensystem_rotating,
    instantaneous_energies,
    instantaneous_states,
    min_gap,
    tilt_operator,
)
from src.utils.errors import DomainError, GapClosed, MissingHistory, NotCyclic
from src.utils.logger import get_logger

logger = get_logger(__name__)

TWO_PI = 2 * np.pi

# total S_z along the field for xi_1..xi_4 (and eta_1..eta_4)
TWO_SPIN_PROJECTIONS = (1.0, 0.0, 0.0, -1.0)


def wrap_phase(x):
    """Map phases into (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), TWO_PI)


def phase_distance(a: float, b: float) -> float:
    """|a - b| modulo 2 pi."""
    return float(abs(wrap_phase(a - b)))


@dataclass(frozen=True)
class PhaseBreakdown:
    total: float
    dynamical: float
    geometric: float
    wrapped_geometric: float
    cyclicity_defect: float

    @property
    def wrapped_total(self) -> float:
        return float(wrap_phase(self.total))


@dataclass(frozen=True)
class BerryConnectionResult:
    """Discrete Berry phase of one eigenstate around the field loop."""

    wrapped: float
    unwrapped: float
    eigenindex: int
    grid_points: int


def cyclicity_defect(result: PropagationResult, state0: QuantumState) -> float:
    return float(1.0 - abs(state0.overlap(result.final_state)))


def total_phase(result: PropagationResult, state0: QuantumState,
                cyclicity_tol: Optional[float] = None) -> float:
    """
    arg<psi(0)|psi(T)>, on the branch picked out by the accumulated step phases.

    Raises:
        NotCyclic: if 1 - |<psi(0)|psi(T)>| exceeds the cyclicity tolerance
        MissingHistory: if the result carries no state history
    """
    limit = Config.CYCLICITY_TOL if cyclicity_tol is None else cyclicity_tol
    defect = cyclicity_defect(result, state0)
    if defect > limit:
        raise NotCyclic(f"cyclicity defect {defect:.3e} exceeds {limit:.1e}")
    psi = result.state_history
    if psi is None or len(psi) < 2:
        raise MissingHistory("total phase needs the sampled state history")

    steps = np.angle(np.sum(psi[:-1].conj() * psi[1:], axis=1))
    accumulated = float(np.angle(np.vdot(state0.amplitudes, psi[0])) + steps.sum())
    endpoint = float(np.angle(state0.overlap(result.final_state)))
    return accumulated + float(wrap_phase(endpoint - accumulated))


def dynamical_phase(result: PropagationResult) -> float:
    """-int <psi|H(t)|psi> dt by the composite trapezoid rule on the propagation grid."""
    energies = result.energy_expectation_history
    if energies is None or len(energies) < 2 or result.time_grid is None:
        raise MissingHistory("dynamical phase needs the energy expectation history")
    return -float(trapezoid(energies, result.time_grid))


def aa_phase(result: PropagationResult, state0: QuantumState,
             cyclicity_tol: Optional[float] = None) -> PhaseBreakdown:
    """Full breakdown of a cyclic evolution; geometric = total - dynamical."""
    total = total_phase(result, state0, cyclicity_tol)
    dynamical = dynamical_phase(result)
    geometric = total - dynamical
    breakdown = PhaseBreakdown(
        total=total,
        dynamical=dynamical,
        geometric=geometric,
        wrapped_geometric=float(wrap_phase(geometric)),
        cyclicity_defect=cyclicity_defect(result, state0),
    )
    logger.debug(f"phase breakdown: {breakdown}")
    return breakdown


def berry_phase_connection(cfg: AnyConfig, eigenindex: int, grid_points: Optional[int] = None,
                           gauge: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                           sense: int = 1) -> BerryConnectionResult:
    """
    Berry phase of an instantaneous eigenstate as -Im log prod_k <xi(phi_k)|xi(phi_k+1)>.

    Args:
        cfg: single- or two-spin configuration; the loop is phi0 -> phi0 + 2 pi sense
        eigenindex: 0/1 (up/down along B) or 0..3 (xi_1..xi_4)
        grid_points: loop discretization, at least 1000
        gauge: optional phase field f(phi); eigenstates are multiplied by exp(i f(phi))
        sense: +1 or -1, direction of the loop

    Raises:
        GapClosed: if the chosen level touches another one
    """
    n = grid_points or Config.BERRY_GRID_POINTS
    if n < 1000:
        raise ValueError(f"grid_points must be at least 1000, got {n}")
    energies = instantaneous_energies(cfg)
    if not 0 <= eigenindex < len(energies):
        raise ValueError(f"eigenindex {eigenindex} out of range for {len(energies)} levels")
    gap = min_gap(energies, eigenindex)
    if gap < Config.GAP_TOL:
        raise GapClosed(f"level {eigenindex} is within {gap:.3e} of another level")

    phis = drive(cfg).phi0 + sense * TWO_PI * np.arange(n) / n
    xi = instantaneous_states(cfg, phis, allow_degenerate=True)[eigenindex]
    if gauge is not None:
        xi = xi * np.exp(1j * np.asarray(gauge(phis), dtype=float))[:, None]

    links = np.sum(xi.conj() * np.roll(xi, -1, axis=0), axis=1)
    wrapped = float(wrap_phase(-np.angle(np.prod(links / np.abs(links)))))
    unwrapped = -float(np.angle(links).sum())
    return BerryConnectionResult(wrapped=wrapped, unwrapped=unwrapped, eigenindex=eigenindex, grid_points=n)


def solid_angle(theta: float) -> float:
    """Omega(theta) = 2 pi (1 - cos theta) for theta in [0, pi]."""
    if not np.isfinite(theta) or theta < 0 or theta > np.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    return float(TWO_PI * (1 - np.cos(theta)))


def berry_phase_closed_form(theta: float, sigma: int = 1) -> float:
    """-sigma Omega(theta) / 2 for spin sigma along the field."""
    return -sigma * solid_angle(theta) / 2


def aa_phase_closed_form(cfg: FieldConfig, sigma: int = 1) -> float:
    """Geometric phase of |sigma_B~> over tau: -sigma sgn(omega) Omega(theta~) / 2."""
    if cfg.omega == 0:
        raise ValueError("a static field has no cycle")
    return -sigma * float(np.sign(cfg.omega)) * solid_angle(cfg.theta_tilde) / 2


def aa_dynamical_closed_form(cfg: FieldConfig, sigma: int = 1) -> float:
    """sigma (kappa B~ tau / 2 - sgn(omega) pi cos theta~)."""
    if cfg.omega == 0:
        raise ValueError("a static field has no cycle")
    return sigma * (cfg.kappa * cfg.B_tilde * cfg.period / 2
                    - np.sign(cfg.omega) * np.pi * np.cos(cfg.theta_tilde))


def two_qubit_berry_closed_form(theta: float, index: int) -> float:
    """-(s_alpha + s_beta along B) Omega(theta) for xi_{index + 1}."""
    return -TWO_SPIN_PROJECTIONS[index] * solid_angle(theta)


def two_qubit_aa_closed_form(cfg: TwoQubitConfig, index: int, cycles: int = 1) -> float:
    """
    Geometric phase of eta_{index + 1} over cycles * tau: 2 pi cycles sgn(omega) <eta|S_z|eta>.

    Exact for any kappas, since eta is a stationary state of the rotating-frame
    generator; J enters only through <S_z>.
    """
    f = cfg.field
    if f.omega == 0:
        raise ValueError("a static field has no cycle")
    eta = eigensystem_rotating(cfg, allow_degenerate=True).states[index]
    r = tilt_operator(cfg)
    sz = eta.expectation(r.conj().T @ TOTAL_SZ @ r)
    return float(TWO_PI * cycles * np.sign(f.omega) * sz)
