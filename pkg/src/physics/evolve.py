"""
Time evolution under the rotating-field Hamiltonians.

- propagate_exact: closed-form rotating-frame propagator
  U(t) = e^{-i omega t S_z} e^{-i H~ t} (tilt applied by conjugation)
- propagate_stepped: time-ordered product of midpoint exponentials
  exp(-i H(t_mid) dt) for arbitrary phi(t) profiles and echo schedules
- adiabatic_cycle: picks the cycle time from a slowness target and reports
  leakage out of the instantaneous eigenstate
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Tuple

import numpy as np

from config import Config
from src.core.linalg import SPIN, TOTAL_SZ, expm_hermitian_batch, expm_hermitian_generator
from src.core.states import QuantumState, Unitary
from src.physics.model import (
    AnyConfig,
    TwoQubitConfig,
    dimension,
    drive,
    hamiltonian_at,
    instantaneous_energies,
    min_gap,
    rotating_frame_hamiltonian,
    tilt_operator,
)
from src.physics.schedule import PulseSchedule, PulseSegment
from src.utils.errors import DimensionMismatch, GapClosed, ProfileNotLinear, StepCountTooSmall
from src.utils.logger import get_logger

logger = get_logger(__name__)

# history resolution for the closed form: max |H| dt per sample
_EXACT_SAMPLE_PHASE = 0.1


@dataclass
class PropagationResult:
    """Outcome of one propagation; histories are sampled on time_grid."""

    final_state: QuantumState
    cycle_unitary: Unitary
    time_grid: np.ndarray
    state_history: Optional[np.ndarray]  # shape (len(time_grid), dim)
    energy_expectation_history: np.ndarray
    steps: int = 0
    leakage: Optional[float] = None
    duration: float = 0.0


def _check_state(cfg: AnyConfig, state0: QuantumState) -> None:
    if state0.dim != dimension(cfg):
        raise DimensionMismatch(f"state of dim {state0.dim} does not fit a dim {dimension(cfg)} model")


def _energy_expectations(hs: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.real(np.einsum("ni,nij,nj->n", psi.conj(), hs, psi))


def _sz_diagonal(cfg: AnyConfig) -> np.ndarray:
    return np.real(np.diag(TOTAL_SZ if isinstance(cfg, TwoQubitConfig) else SPIN[2]))


def exact_propagator(cfg: AnyConfig, t: float) -> Unitary:
    """Closed-form U(t) for phi(t) = phi0 + omega t."""
    f = drive(cfg)
    r = tilt_operator(cfg)
    frame = r.conj().T @ np.diag(np.exp(-1j * f.omega * t * _sz_diagonal(cfg))) @ r
    return Unitary.from_matrix(frame @ expm_hermitian_generator(rotating_frame_hamiltonian(cfg), t).matrix)


def propagate_exact(cfg: AnyConfig, t: float, state0: QuantumState, samples: Optional[int] = None,
                    segment: Optional[PulseSegment] = None) -> PropagationResult:
    """
    Apply the closed-form rotating-frame propagator up to time t.

    Args:
        cfg: single- or two-spin configuration (phi = phi0 + omega t)
        t: final time
        state0: initial state
        samples: history samples (raised automatically so that |H| dt <= 0.1)
        segment: optional schedule segment being reproduced; must be linear and unreversed

    Raises:
        ProfileNotLinear: if segment describes a non-linear or reversed cycle
    """
    _check_state(cfg, state0)
    f = drive(cfg)
    if segment is not None:
        if segment.profile != "linear" or segment.field_sign != 1:
            raise ProfileNotLinear(f"closed form needs a linear, unreversed cycle, got {segment.profile!r}")
        if not math.isclose(segment.omega, f.omega, rel_tol=1e-12, abs_tol=1e-15):
            raise ProfileNotLinear(f"segment rate {segment.omega} differs from drive omega {f.omega}")

    ht = rotating_frame_hamiltonian(cfg)
    spread = float(np.max(np.abs(np.linalg.eigvalsh(hamiltonian_at(cfg, f.phi0)))))
    n = samples or Config.HISTORY_SAMPLES
    n = max(n, int(math.ceil(spread * abs(t) / _EXACT_SAMPLE_PHASE)) + 1)
    ts = np.linspace(0.0, t, n)

    w, v = np.linalg.eigh(ht)
    coeffs = v.conj().T @ state0.amplitudes
    psi_rot = (np.exp(-1j * np.outer(ts, w)) * coeffs) @ v.T
    r = tilt_operator(cfg)
    frame = np.exp(-1j * f.omega * np.outer(ts, _sz_diagonal(cfg)))
    psi = ((psi_rot @ r.T) * frame) @ r.conj()

    energies = _energy_expectations(hamiltonian_at(cfg, f.phi_at(ts)), psi)
    u = exact_propagator(cfg, t)
    logger.debug(f"exact propagation to t={t:.6g} with {n} samples")
    return PropagationResult(
        final_state=QuantumState.from_amplitudes(psi[-1], drift_tol=Config.NORM_DRIFT_TOL),
        cycle_unitary=u,
        time_grid=ts,
        state_history=psi,
        energy_expectation_history=energies,
        steps=0,
        duration=float(t),
    )


def _segment_hamiltonians(cfg: AnyConfig, segment: PulseSegment, times: np.ndarray) -> np.ndarray:
    phi = drive(cfg).phi0 + segment.phi_offset(times)
    return hamiltonian_at(cfg, phi, segment.field_sign, segment.tilt_chi)


def propagate_stepped(cfg: AnyConfig, schedule: PulseSchedule, state0: QuantumState,
                      steps_per_segment: Optional[int] = None) -> PropagationResult:
    """
    Time-ordered product of midpoint piecewise-constant exponentials.

    Each segment is split into steps_per_segment equal steps; the history keeps
    every node, with segment boundaries appearing twice (once per segment).

    Raises:
        StepCountTooSmall: if steps_per_segment < Config.MIN_STEPS
    """
    _check_state(cfg, state0)
    n = steps_per_segment or Config.DEFAULT_STEPS
    if n < Config.MIN_STEPS:
        raise StepCountTooSmall(f"steps_per_segment={n} is below {Config.MIN_STEPS}")

    d = dimension(cfg)
    total = np.eye(d, dtype=complex)
    psi_start = state0.amplitudes
    t_offset = 0.0
    times: List[np.ndarray] = []
    states: List[np.ndarray] = []
    energies: List[np.ndarray] = []

    for segment in schedule.segments:
        dt = segment.duration / n
        nodes = np.linspace(0.0, segment.duration, n + 1)
        mids = 0.5 * (nodes[:-1] + nodes[1:])
        steps = expm_hermitian_batch(_segment_hamiltonians(cfg, segment, mids), np.full(n, dt))

        cumulative = np.empty((n + 1, d, d), dtype=complex)
        cumulative[0] = np.eye(d)
        for k in range(n):
            cumulative[k + 1] = steps[k] @ cumulative[k]

        psi = cumulative @ psi_start
        times.append(t_offset + nodes)
        states.append(psi)
        energies.append(_energy_expectations(_segment_hamiltonians(cfg, segment, nodes), psi))

        total = cumulative[-1] @ total
        psi_start = psi[-1]
        t_offset += segment.duration

    logger.debug(f"stepped propagation: {len(schedule.segments)} segment(s) x {n} steps")
    return PropagationResult(
        final_state=QuantumState.from_amplitudes(psi_start, drift_tol=Config.NORM_DRIFT_TOL),
        cycle_unitary=Unitary.from_matrix(total),
        time_grid=np.concatenate(times),
        state_history=np.concatenate(states),
        energy_expectation_history=np.concatenate(energies),
        steps=n,
        duration=t_offset,
    )


def adiabatic_cycle_time(cfg: AnyConfig, slowness: float) -> Tuple[float, float]:
    """(tau, gap) with omega / gap = slowness and omega = 2 pi / tau."""
    if slowness <= 0:
        raise ValueError(f"slowness must be positive, got {slowness}")
    gap = min_gap(instantaneous_energies(cfg))
    if gap < Config.GAP_TOL:
        raise GapClosed(f"instantaneous gap {gap:.3e} below {Config.GAP_TOL:.1e}")
    return 2 * np.pi / (slowness * gap), gap


def adiabatic_cycle(cfg: AnyConfig, schedule: PulseSchedule, slowness: float, state0: QuantumState,
                    steps_per_segment: Optional[int] = None) -> PropagationResult:
    """
    Propagate the schedule slowly enough that omega / gap <= slowness.

    Every cycle is stretched to tau = 2 pi / (slowness * gap); the step count is
    raised until max|E| dt <= Config.MAX_PHASE_STEP. Leakage is the largest
    1 - |<instantaneous eigenstate|psi(t)>|^2 over the grid, tracking the level
    the state occupies at the start of each cycle.
    """
    tau, gap = adiabatic_cycle_time(cfg, slowness)
    energies = instantaneous_energies(cfg)
    spread = float(np.max(np.abs(energies)))
    n = max(steps_per_segment or Config.DEFAULT_STEPS,
            int(math.ceil(spread * tau / Config.MAX_PHASE_STEP)))
    stretched = schedule.with_duration(tau)
    logger.info(f"adiabatic cycle: slowness={slowness:.3g}, gap={gap:.4g}, tau={tau:.6g}, steps={n}")

    result = propagate_stepped(cfg, stretched, state0, n)

    leakage = 0.0
    for i, segment in enumerate(stretched.segments):
        block = slice(i * (n + 1), (i + 1) * (n + 1))
        nodes = np.linspace(0.0, segment.duration, n + 1)
        _, vecs = np.linalg.eigh(_segment_hamiltonians(cfg, segment, nodes))
        populations = np.abs(np.einsum("nij,ni->nj", vecs.conj(), result.state_history[block])) ** 2
        level = int(np.argmax(populations[0]))
        leakage = max(leakage, float(np.max(1.0 - populations[:, level])))
    return replace(result, leakage=max(leakage, 0.0))


def minimal_cyclic_period(cfg: AnyConfig, state0: QuantumState,
                          multiples: Iterable[float] = (0.5, 1.0, 1.5, 2.0),
                          tol: Optional[float] = None) -> Optional[float]:
    """Smallest m * tau (m from multiples) after which state0 returns to its ray."""
    limit = Config.CYCLICITY_TOL if tol is None else tol
    tau = drive(cfg).period
    for m in sorted(multiples):
        u = exact_propagator(cfg, m * tau)
        defect = 1.0 - abs(np.vdot(state0.amplitudes, u.matrix @ state0.amplitudes))
        if defect <= limit:
            return m * tau
    return None
