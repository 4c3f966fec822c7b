"""
Randomized acceptance suites: propagator cross-check, eigen-structure and property checks.

All draws come from numpy.random.default_rng(seed), so a fixed --seed reproduces
every reported number.
"""
from __future__ import annotations

from typing import Callable, List, Tuple

import numpy as np
from scipy.stats import unitary_group

from config import Config
from src.core.linalg import distance_up_to_global_phase, makhlin_invariants
from src.core.states import QuantumState, Unitary
from src.experiments.registry import ExperimentOutcome, RunOptions, experiment
from src.gates.targets import Mechanism
from src.gates.two_qubit import two_qubit_geometric_audit
from src.physics.evolve import adiabatic_cycle, exact_propagator, propagate_stepped
from src.physics.model import (
    FieldConfig,
    TwoQubitConfig,
    eigensystem_single,
    eigensystem_two,
    hamiltonian_two,
    qubit_basis,
    two_spin_energies,
)
from src.physics.phase import berry_phase_connection, phase_distance
from src.physics.schedule import PulseSchedule, PulseSegment
from src.utils.logger import get_logger

logger = get_logger(__name__)

SINGLE_PROPAGATOR_TOL = 1e-8
TWO_PROPAGATOR_TOL = 1e-7
EIGENVALUE_TOL = 1e-10
TIME_INDEPENDENCE_TOL = 1e-12
GAUGE_TOL = 1e-12
PROFILE_TOL = 1e-4
MAKHLIN_TOL = 1e-9
PROFILE_FULL_TRIALS = 100
PROPAGATOR_REFERENCE_STEPS = 20000
MIN_LAB_PHASE = 2.0

_MAX_DRAWS = 10000


def _draw(rng: np.random.Generator, make: Callable[[np.random.Generator], object],
          accept: Callable[[object], bool]):
    for _ in range(_MAX_DRAWS):
        candidate = make(rng)
        if accept(candidate):
            return candidate
    raise RuntimeError("no acceptable random configuration found")


def random_field(rng: np.random.Generator, omega_range: Tuple[float, float] = (1.0, 4.0)) -> FieldConfig:
    return FieldConfig(
        B0=rng.uniform(-1.0, 1.0),
        B1=rng.uniform(0.3, 1.5),
        omega=rng.choice([-1.0, 1.0]) * rng.uniform(*omega_range),
        kappa=rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 1.5),
        chi=rng.uniform(0.0, np.pi / 2),
        phi0=rng.uniform(0.0, 2 * np.pi),
    )


def random_two_qubit(rng: np.random.Generator, omega_range: Tuple[float, float] = (1.0, 4.0)) -> TwoQubitConfig:
    ka = rng.uniform(0.5, 1.5)
    kb = ka if rng.random() < 0.5 else rng.uniform(0.5, 1.5)
    return TwoQubitConfig(field=random_field(rng, omega_range), kappa_alpha=ka, kappa_beta=kb,
                          J=rng.uniform(-1.0, 1.0))


def lab_phase_per_cycle(cfg) -> float:
    """|kappa| B tau of the lab-frame field, summed over spins."""
    f = cfg.field if isinstance(cfg, TwoQubitConfig) else cfg
    return _kappa_sum(cfg) * f.B * f.period


def _kappa_sum(cfg) -> float:
    if isinstance(cfg, TwoQubitConfig):
        return abs(cfg.kappa_alpha) + abs(cfg.kappa_beta)
    return abs(cfg.kappa)


def midpoint_error_estimate(cfg, steps: int) -> float:
    """
    Leading-order bound on the midpoint integrator error over one period.

    Each step of length h errs by at most h^3 (|H''|/24 + |H| |H'|/6), the
    quadrature term plus the first commutator term of the Magnus series.
    """
    f = cfg.field if isinstance(cfg, TwoQubitConfig) else cfg
    ks = _kappa_sum(cfg)
    exchange = 0.75 * abs(cfg.J) if isinstance(cfg, TwoQubitConfig) else 0.0
    h_norm = ks * f.B / 2 + exchange
    h_dot = ks * f.B1 * abs(f.omega) / 2
    h_ddot = h_dot * abs(f.omega)
    return f.period ** 3 / steps ** 2 * (h_ddot / 24 + h_norm * h_dot / 6)


def _in_regime(cfg, tol: float) -> bool:
    return (lab_phase_per_cycle(cfg) >= MIN_LAB_PHASE
            and midpoint_error_estimate(cfg, PROPAGATOR_REFERENCE_STEPS) <= tol)


def _stepped_vs_exact(cfg, steps: int) -> float:
    period = cfg.field.period if isinstance(cfg, TwoQubitConfig) else cfg.period
    omega = cfg.field.omega if isinstance(cfg, TwoQubitConfig) else cfg.omega
    dim = 4 if isinstance(cfg, TwoQubitConfig) else 2
    schedule = PulseSchedule(segments=[PulseSegment.linear_cycle(omega)])
    stepped = propagate_stepped(cfg, schedule, QuantumState.basis("u" * (dim // 2)), steps)
    return distance_up_to_global_phase(stepped.cycle_unitary, exact_propagator(cfg, period))


@experiment("propagator-check")
def propagator_check(options: RunOptions) -> ExperimentOutcome:
    """Closed-form rotating-frame propagators against the stepped integrator."""
    rng = np.random.default_rng(options.seed)
    steps = options.steps or Config.DEFAULT_STEPS
    single: List[float] = []
    for _ in range(20):
        cfg = _draw(rng, random_field, lambda c: _in_regime(c, SINGLE_PROPAGATOR_TOL))
        single.append(_stepped_vs_exact(cfg, steps))
    two: List[float] = []
    for _ in range(10):
        cfg = _draw(rng, random_two_qubit, lambda c: _in_regime(c, TWO_PROPAGATOR_TOL))
        two.append(_stepped_vs_exact(cfg, steps))
    logger.debug(f"propagator-check: single max {max(single):.2e}, two max {max(two):.2e}")

    outputs = {"single_max_distance": max(single), "two_max_distance": max(two),
               "single_distances": single, "two_distances": two}
    checks = {"single": max(single) <= SINGLE_PROPAGATOR_TOL, "two": max(two) <= TWO_PROPAGATOR_TOL}
    return ({"seed": options.seed, "steps": steps}, outputs, checks,
            {"single": SINGLE_PROPAGATOR_TOL, "two": TWO_PROPAGATOR_TOL})


@experiment("eigen-structure")
def eigen_structure(options: RunOptions) -> ExperimentOutcome:
    """Analytic two-spin energies and eigenvectors against numerical diagonalization."""
    rng = np.random.default_rng(options.seed)
    value_err = vector_err = drift = 0.0
    for _ in range(options.trials):
        cfg = random_two_qubit(rng)
        t = rng.uniform(0.0, 10.0)
        h = hamiltonian_two(cfg, t)
        numeric = np.linalg.eigvalsh(h)
        analytic = np.sort(two_spin_energies(cfg.kappa_alpha, cfg.kappa_beta, cfg.J, cfg.field.B))
        value_err = max(value_err, float(np.max(np.abs(numeric - analytic))))
        drift = max(drift, float(np.max(np.abs(numeric - np.linalg.eigvalsh(hamiltonian_two(cfg, 0.0))))))
        eig = eigensystem_two(cfg, t, allow_degenerate=True)
        for energy, state in zip(eig.energies, eig.states):
            residual = h @ state.amplitudes - energy * state.amplitudes
            vector_err = max(vector_err, float(np.linalg.norm(residual)))

    outputs = {"max_eigenvalue_error": value_err, "max_eigenvector_residual": vector_err,
               "max_time_drift": drift}
    checks = {
        "eigenvalues": value_err <= EIGENVALUE_TOL,
        "eigenvectors": vector_err <= EIGENVALUE_TOL,
        "time_independent": drift <= TIME_INDEPENDENCE_TOL,
    }
    return ({"seed": options.seed, "trials": options.trials}, outputs, checks,
            {"eigen": EIGENVALUE_TOL, "time_independence": TIME_INDEPENDENCE_TOL})


def _random_gauge(rng: np.random.Generator) -> Callable[[np.ndarray], np.ndarray]:
    amplitudes = rng.normal(size=3)
    shifts = rng.uniform(0.0, 2 * np.pi, size=3)
    return lambda phi: sum(a * np.sin((k + 1) * phi + s) for k, (a, s) in enumerate(zip(amplitudes, shifts)))


def _echo_gate_phase(cfg: FieldConfig, profile: str, slowness: float) -> float:
    """2 gamma for the echo gate diag(e^{i gamma}, e^{-i gamma}) in the qubit basis."""
    state0 = eigensystem_single(cfg, 0.0).states[0]
    result = adiabatic_cycle(cfg, PulseSchedule.echo(1.0, profile), slowness, state0)
    u = result.cycle_unitary.in_basis(qubit_basis(cfg)).matrix
    return float(np.angle(u[0, 0] * np.conj(u[1, 1])))


@experiment("properties")
def properties(options: RunOptions) -> ExperimentOutcome:
    """Norm, unitarity, gauge invariance, profile independence and Makhlin local invariance."""
    rng = np.random.default_rng(options.seed)
    norm_drift = unitarity = gauge = makhlin = 0.0

    for _ in range(options.trials):
        cfg = random_two_qubit(rng) if rng.random() < 0.5 else random_field(rng)
        omega = cfg.field.omega if isinstance(cfg, TwoQubitConfig) else cfg.omega
        dim = 4 if isinstance(cfg, TwoQubitConfig) else 2
        psi0 = QuantumState.from_amplitudes(rng.normal(size=dim) + 1j * rng.normal(size=dim))
        result = propagate_stepped(cfg, PulseSchedule(segments=[PulseSegment.linear_cycle(omega)]), psi0,
                                   2 * Config.MIN_STEPS)
        norm_drift = max(norm_drift, float(np.max(np.abs(np.linalg.norm(result.state_history, axis=1) - 1))))
        unitarity = max(unitarity, result.cycle_unitary.unitarity_defect)

        loop = random_field(rng) if dim == 2 else cfg.with_J(cfg.J if abs(cfg.J) > 0.1 else 0.5)
        index = int(rng.integers(0, 2 if dim == 2 else 4))
        plain = berry_phase_connection(loop, index, 1000).wrapped
        gauged = berry_phase_connection(loop, index, 1000, gauge=_random_gauge(rng)).wrapped
        gauge = max(gauge, phase_distance(plain, gauged))

        u = Unitary.from_matrix(unitary_group.rvs(4, random_state=rng))
        local = Unitary.from_matrix(np.kron(unitary_group.rvs(2, random_state=rng),
                                            unitary_group.rvs(2, random_state=rng)))
        g1, g2 = makhlin_invariants(u)
        h1, h2 = makhlin_invariants(local @ u @ local.dagger())
        makhlin = max(makhlin, abs(g1 - h1), abs(g2 - h2))

    slowness = options.effective_slowness
    profile_gap = 0.0
    for _ in range(options.adiabatic_trials):
        cfg = FieldConfig(B0=rng.uniform(-1.0, 1.0), B1=rng.uniform(0.5, 1.5), kappa=1.0)
        linear = _echo_gate_phase(cfg, "linear", slowness)
        smooth = _echo_gate_phase(cfg, "smoothstep", slowness)
        profile_gap = max(profile_gap, phase_distance(linear, smooth) / 2)
        logger.debug(f"profile gap at B0={cfg.B0:.3f}: {phase_distance(linear, smooth) / 2:.2e}")

    outputs = {"max_norm_drift": norm_drift, "max_unitarity_defect": unitarity,
               "max_gauge_change": gauge, "max_profile_gap": profile_gap, "max_makhlin_change": makhlin}
    checks = {
        "norm": norm_drift <= Config.NORM_DRIFT_TOL,
        "unitarity": unitarity <= Config.UNITARITY_TOL,
        "gauge": gauge <= GAUGE_TOL,
        "profile": profile_gap <= PROFILE_TOL,
        "makhlin": makhlin <= MAKHLIN_TOL,
    }
    if options.adiabatic_trials < PROFILE_FULL_TRIALS:
        outputs["notes"] = [f"profile independence ran {options.adiabatic_trials} adiabatic trials "
                            f"instead of {PROFILE_FULL_TRIALS}"]
    inputs = {"seed": options.seed, "trials": options.trials,
              "adiabatic_trials": options.adiabatic_trials, "slowness": slowness}
    return inputs, outputs, checks, {"gauge": GAUGE_TOL, "profile": PROFILE_TOL, "makhlin": MAKHLIN_TOL}


@experiment("two-berry-suite")
def two_berry_suite(options: RunOptions) -> ExperimentOutcome:
    """Berry phases of xi_1..xi_4 and the factorization verdict over random coupled configs."""
    rng = np.random.default_rng(options.seed)
    phase_err = defect = 0.0
    unequal = 0
    for i in range(10):
        cfg = random_two_qubit(rng)
        if i % 2 and cfg.equal_kappa:
            cfg = cfg.model_copy(update={"kappa_beta": cfg.kappa_alpha + 0.5})
        if abs(cfg.J) < 0.1:
            cfg = cfg.with_J(0.5)
        unequal += not cfg.equal_kappa
        audit = two_qubit_geometric_audit(cfg, Mechanism.BERRY_ECHO)
        phase_err = max(phase_err, audit.max_closed_form_error)
        defect = max(defect, audit.factorization.defect)

    tol = options.threshold(1e-6)
    outputs = {"max_phase_error": phase_err, "max_factorization_defect": defect, "unequal_kappa_configs": unequal}
    checks = {"phases": phase_err <= tol, "factorizable": defect <= Config.FACTORIZATION_TOL}
    return {"seed": options.seed}, outputs, checks, {"phases": tol}
