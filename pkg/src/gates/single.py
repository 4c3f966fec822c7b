"""
Single-qubit geometric gates under a rotating Zeeman field.

Berry gates use the two-cycle echo (B reversed in the second cycle) so the
dynamical phases cancel and the Berry phase doubles: gamma = 2 pi cos(theta).
AA gates pick B0 and omega so the dynamical phase vanishes in both basis
states and one period gives gamma = sgn(omega) pi cos(theta~).

In the field-aligned qubit basis both realise
R_y(chi) diag(e^{i gamma}, e^{-i gamma}) R_y(chi)^dagger.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Literal, Optional

import numpy as np

from config import Config
from src.core.linalg import distance_up_to_global_phase, rotation_y
from src.core.states import QuantumState, Unitary
from src.gates.targets import GateSpec, GateTarget, Mechanism
from src.physics.evolve import adiabatic_cycle, propagate_exact, propagate_stepped
from src.physics.model import FieldConfig, eigensystem_rotating, eigensystem_single, qubit_basis
from src.physics.phase import dynamical_phase, wrap_phase
from src.physics.schedule import PulseSchedule, PulseSegment
from src.utils.errors import BasisUndefined, NoRealRoot, SolverResidualError, Unreachable, ZeroField
from src.utils.logger import get_logger

logger = get_logger(__name__)

# algebraic residuals (ratio, phase, field equation) are held to this
RESIDUAL_LIMIT = 1e-10

BuildMode = Literal["closed_form", "simulated"]


@dataclass(frozen=True)
class SolvedParameters:
    """Field parameters realising a requested phase, with their residual certificate."""

    field: FieldConfig
    schedule: PulseSchedule
    mechanism: Mechanism
    target_gamma: float
    predicted_gamma: float
    residuals: Dict[str, float] = field(default_factory=dict)
    branch: str = "direct"  # "shifted": realised gamma differs from the target by pi

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)


@dataclass(frozen=True)
class GateBuild:
    """Gate in the qubit basis and its distance to the requested target."""

    unitary: Unitary
    target: Unitary
    distance: float
    mode: str
    leakage: Optional[float] = None
    steps: int = 0


def _check_residuals(residuals: Dict[str, float], limit: float = RESIDUAL_LIMIT) -> None:
    bad = {k: v for k, v in residuals.items() if not v <= limit}
    if bad:
        raise SolverResidualError(f"solver residuals above {limit:.0e}: {bad}")


def rotated_basis_gate(gamma: float, chi: float = 0.0) -> Unitary:
    """R_y(chi) diag(e^{i gamma}, e^{-i gamma}) R_y(chi)^dagger."""
    r = rotation_y(chi)
    return Unitary.from_matrix(r @ np.diag([np.exp(1j * gamma), np.exp(-1j * gamma)]) @ r.conj().T)


def solve_berry_gate(gamma: float, B1: float = 1.0, kappa: float = 1.0, chi: float = 0.0,
                     slowness: Optional[float] = None, profile: str = "smoothstep") -> SolvedParameters:
    """
    Field ratio for an echo Berry gate diag(e^{i gamma}, e^{-i gamma}).

    Sets cos(theta) = gamma / 2 pi, i.e. B0 = B1 c / sqrt(1 - c^2). The returned
    schedule is the two-cycle echo at the requested slowness.

    Raises:
        Unreachable: if |gamma| >= 2 pi
    """
    if not B1 > 0:
        raise ValueError(f"B1 must be positive, got {B1}")
    c = gamma / (2 * np.pi)
    if abs(c) >= 1:
        raise Unreachable(f"|gamma| = {abs(gamma):.6g} needs |cos theta| >= 1")
    B0 = B1 * c / np.sqrt(1 - c * c)

    rate = (slowness or Config.DEFAULT_SLOWNESS) * abs(kappa) * np.hypot(B0, B1)
    cfg = FieldConfig(B0=B0, B1=B1, omega=rate, kappa=kappa, chi=chi)
    schedule = PulseSchedule.echo(duration=2 * np.pi / rate, profile=profile)

    predicted = 2 * np.pi * np.cos(cfg.theta)
    residuals = {"phase": abs(predicted - gamma)}
    _check_residuals(residuals)
    logger.debug(f"berry gate gamma={gamma:.6g}: B0/B1={B0 / B1:.10g}")
    return SolvedParameters(field=cfg, schedule=schedule, mechanism=Mechanism.BERRY_ECHO,
                            target_gamma=gamma, predicted_gamma=float(predicted), residuals=residuals)


def solve_aa_gate(gamma: float, B1: float = 1.0, kappa: float = 1.0, chi: float = 0.0,
                  verify: bool = True) -> SolvedParameters:
    """
    Zero-dynamical-phase AA gate diag(e^{i gamma}, e^{-i gamma}) in one period.

    With u = B0 + omega/kappa = B1 cot(theta~) and cos(theta~) = gamma / pi, the
    vanishing-dynamical-phase condition B0^2 + (omega/kappa) B0 + B1^2 = 0 fixes
    omega/kappa = (u^2 + B1^2) / u and B0 = -B1^2 / u. The realised phase carries
    the sign of kappa; a target of the other sign is replaced by gamma - sgn(gamma) pi,
    equal up to a global phase (branch="shifted").

    Raises:
        Unreachable: if gamma = 0 or |gamma| >= pi
        NoRealRoot: if the field equation has no real B0 for the produced omega
        SolverResidualError: if any residual, including the dynamical phase by quadrature, is too large
    """
    if not B1 > 0:
        raise ValueError(f"B1 must be positive, got {B1}")
    if abs(gamma) >= np.pi:
        raise Unreachable(f"|gamma| = {abs(gamma):.6g} needs |cos theta~| >= 1")
    if gamma == 0:
        raise Unreachable("gamma = 0 needs omega/kappa -> infinity")

    branch = "direct"
    effective = gamma
    if np.sign(gamma) != np.sign(kappa):
        effective = gamma - np.sign(gamma) * np.pi
        branch = "shifted"
    c = effective / np.pi
    u = B1 * c / np.sqrt(1 - c * c)
    omega_over_kappa = (u * u + B1 * B1) / u
    B0 = -B1 * B1 / u
    if omega_over_kappa ** 2 - 4 * B1 * B1 < 0:
        raise NoRealRoot(f"discriminant negative for omega/kappa = {omega_over_kappa:.6g}")

    cfg = FieldConfig(B0=B0, B1=B1, omega=kappa * omega_over_kappa, kappa=kappa, chi=chi)
    schedule = PulseSchedule(segments=[PulseSegment.linear_cycle(cfg.omega)])
    realised = float(np.sign(cfg.omega) * np.pi * np.cos(cfg.theta_tilde))

    residuals = {
        "field_equation": abs(B0 * B0 + omega_over_kappa * B0 + B1 * B1) / (B1 * B1),
        "ratio": abs(cfg.B0_tilde / B1 - c / np.sqrt(1 - c * c)),
        "phase": abs(float(wrap_phase(realised - effective))),
    }
    _check_residuals(residuals)
    if verify:
        residuals["dynamical"] = aa_dynamical_residual(cfg)
        _check_residuals({"dynamical": residuals["dynamical"]}, Config.RESIDUAL_TOL)
    logger.debug(f"aa gate gamma={gamma:.6g} ({branch}): B0={B0:.10g}, omega={cfg.omega:.10g}")
    return SolvedParameters(field=cfg, schedule=schedule, mechanism=Mechanism.AA_ZERO_DYNAMICAL,
                            target_gamma=gamma, predicted_gamma=realised, residuals=residuals,
                            branch=branch)


def aa_dynamical_residual(cfg: FieldConfig) -> float:
    """Largest |dynamical phase| over one period among the two rotating-frame eigenstates."""
    worst = 0.0
    for state in eigensystem_rotating(cfg).states:
        result = propagate_exact(cfg, cfg.period, state)
        worst = max(worst, abs(dynamical_phase(result)))
    return worst


def _qubit_basis(cfg: FieldConfig, rotating: bool) -> np.ndarray:
    try:
        return qubit_basis(cfg, rotating)
    except ZeroField as e:
        raise BasisUndefined(str(e)) from e


def build_geometric_gate(spec: GateSpec, params: SolvedParameters, mode: BuildMode = "closed_form",
                         slowness: Optional[float] = None, steps: Optional[int] = None) -> GateBuild:
    """
    Gate realised by params, expressed in the field-aligned qubit basis.

    closed_form evaluates R_y(chi) diag(e^{i gamma}, e^{-i gamma}) R_y(chi)^dagger;
    simulated propagates the schedule (adiabatically for Berry echoes, exactly in
    time for AA cycles) and conjugates the lab cycle unitary into the basis.

    Raises:
        BasisUndefined: if the field defining the qubit basis vanishes
    """
    if spec.dim != 2:
        raise ValueError(f"{spec.target.value} is not a single-qubit target")
    cfg = params.field
    if spec.target is GateTarget.HADAMARD and not np.isclose(cfg.chi, np.pi / 4):
        raise ValueError(f"Hadamard needs chi = pi/4, got {cfg.chi}")
    berry = params.mechanism is Mechanism.BERRY_ECHO
    q = _qubit_basis(cfg, rotating=not berry)

    leakage = None
    n = 0
    if mode == "closed_form":
        u = rotated_basis_gate(params.predicted_gamma, cfg.chi)
    elif mode == "simulated":
        if berry:
            state0 = eigensystem_single(cfg, 0.0).states[0]
            result = adiabatic_cycle(cfg, params.schedule, slowness or Config.DEFAULT_SLOWNESS, state0, steps)
            leakage = result.leakage
        else:
            result = propagate_stepped(cfg, params.schedule, QuantumState.basis("u"), steps)
        n = result.steps
        u = result.cycle_unitary.in_basis(q)
    else:
        raise ValueError(f"unknown build mode {mode!r}")

    distance = distance_up_to_global_phase(u, spec.unitary)
    logger.info(f"{params.mechanism.value} {spec.target.value} gate ({mode}): distance {distance:.3e}")
    return GateBuild(unitary=u, target=spec.unitary, distance=distance, mode=mode, leakage=leakage, steps=n)
