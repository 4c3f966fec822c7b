"""
Two-qubit layer: Heisenberg exchange gates, the hybrid sqrt(SWAP) / pi-8 sequence,
factorization tests and the geometric-phase audit of coupled spins.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple

import numpy as np

from config import Config
from src.core.linalg import (
    EXCHANGE,
    IDENTITY2,
    distance_up_to_global_phase,
    expm_hermitian_generator,
    global_phase_between,
    makhlin_invariants,
)
from src.core.states import Unitary
from src.gates.targets import CNOT, CZ, PI_OVER_8, Mechanism
from src.physics.evolve import propagate_exact
from src.physics.model import (
    TwoQubitConfig,
    eigensystem_rotating,
    eigensystem_two,
    qubit_basis_two,
)
from src.physics.phase import (
    aa_phase,
    berry_phase_connection,
    two_qubit_aa_closed_form,
    two_qubit_berry_closed_form,
    phase_distance,
    wrap_phase,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

Branch = Literal["+i", "-i"]

# unequal-kappa operating points for the AA nontriviality demonstration
DEMO_UNEQUAL_KAPPA = (
    {"B0": 0.5, "B1": 1.0, "omega": 1.0, "kappa_alpha": 1.0, "kappa_beta": 2.0, "J": 1.0},
    {"B0": 0.3, "B1": 1.0, "omega": 0.7, "kappa_alpha": 1.0, "kappa_beta": 1.5, "J": 0.8},
    {"B0": -0.4, "B1": 0.8, "omega": 1.2, "kappa_alpha": 2.0, "kappa_beta": 1.0, "J": 1.5},
)


def exchange_gate(J: float, t: float) -> Unitary:
    """exp(-i J t s_alpha . s_beta)"""
    return expm_hermitian_generator(J * EXCHANGE, t)


def sqrt_swap(branch: Branch = "+i") -> Unitary:
    """Exchange gate at J t = +-pi/2, rephased so the triplet sector is +1 (singlet +i or -i)."""
    if branch == "+i":
        return exchange_gate(1.0, np.pi / 2).scaled(np.exp(1j * np.pi / 8))
    if branch == "-i":
        return exchange_gate(1.0, -np.pi / 2).scaled(np.exp(-1j * np.pi / 8))
    raise ValueError(f"unknown sqrt(SWAP) branch {branch!r}")


@dataclass(frozen=True)
class HybridReport:
    branch: str
    cz_distance: float
    cnot_distance: float
    makhlin_g1: complex
    makhlin_g2: float
    cnot_class: bool
    global_phase_vs_cz: float


def hybrid_cnot_sequence(branch: Branch = "+i", t_gate: Optional[Unitary] = None,
                         tol: Optional[float] = None) -> Tuple[Unitary, HybridReport]:
    """
    (T_alpha)^2 (T_beta^-1)^2 sqrt(SWAP) (T_alpha)^4 sqrt(SWAP).

    The product is a controlled-phase gate (CZ up to a global phase), locally
    equivalent to CNOT; the report states both.
    """
    t = t_gate or PI_OVER_8
    limit = 1e-9 if tol is None else tol
    t_alpha = Unitary.from_matrix(np.kron(t.matrix, IDENTITY2))
    t_beta_inv = Unitary.from_matrix(np.kron(IDENTITY2, t.dagger().matrix))
    root = sqrt_swap(branch)

    product = t_alpha.power(2) @ t_beta_inv.power(2) @ root @ t_alpha.power(4) @ root
    g1, g2 = makhlin_invariants(product)
    report = HybridReport(
        branch=branch,
        cz_distance=distance_up_to_global_phase(product, CZ),
        cnot_distance=distance_up_to_global_phase(product, CNOT),
        makhlin_g1=g1,
        makhlin_g2=g2,
        cnot_class=abs(g1) <= limit and abs(g2 - 1) <= limit,
        global_phase_vs_cz=global_phase_between(product, CZ),
    )
    logger.info(f"hybrid sequence ({branch}): CZ distance {report.cz_distance:.3e}, G=({g1:.3g}, {g2:.3g})")
    return product, report


@dataclass(frozen=True)
class FactorizationResult:
    factorizable: bool
    defect: float
    method: str  # "diagonal" or "makhlin"
    factors: Optional[Tuple[Unitary, Unitary]] = None


def factorization_test(u: Unitary, basis: Optional[np.ndarray] = None,
                       tol: Optional[float] = None) -> FactorizationResult:
    """
    Decide whether a two-qubit unitary is a product of single-qubit ones.

    Diagonal U = diag(e^{ia}, e^{ib}, e^{ic}, e^{id}) is a product iff a - b - c + d
    is a multiple of 2 pi; the factors are then diag(1, e^{i(c-a)}) x diag(e^{ia}, e^{ib}).
    Otherwise the Makhlin invariants must match the identity class (1, 3).
    """
    if u.dim != 4:
        raise ValueError("factorization test needs a two-qubit unitary")
    limit = Config.FACTORIZATION_TOL if tol is None else tol
    if basis is not None:
        u = u.in_basis(basis)
    m = u.matrix

    if np.max(np.abs(m - np.diag(np.diag(m)))) <= Config.DIAGONAL_TOL:
        a, b, c, d = np.angle(np.diag(m))
        defect = abs(float(wrap_phase(a - b - c + d)))
        factors = None
        if defect <= limit:
            factors = (Unitary.from_matrix(np.diag([1.0, np.exp(1j * (c - a))])),
                       Unitary.from_matrix(np.diag([np.exp(1j * a), np.exp(1j * b)])))
        return FactorizationResult(defect <= limit, defect, "diagonal", factors)

    g1, g2 = makhlin_invariants(u)
    defect = max(abs(g1 - 1), abs(g2 - 3))
    return FactorizationResult(defect <= limit, float(defect), "makhlin")


@dataclass
class AuditReport:
    """Geometric phases of the four eigenstates and the verdict on their assembled unitary."""

    mechanism: str
    phases: List[float]
    closed_form: List[float]
    factorization: FactorizationResult
    phases_single_period: Optional[List[float]] = None
    factorization_single_period: Optional[FactorizationResult] = None
    dgamma_dJ: Optional[List[float]] = None
    delta_J: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    @property
    def max_closed_form_error(self) -> float:
        return max(phase_distance(p, c) for p, c in zip(self.phases, self.closed_form))


def _untilted(cfg: TwoQubitConfig) -> TwoQubitConfig:
    return cfg.model_copy(update={"field": cfg.field.untilted()})


def _assemble(vectors: np.ndarray, phases: List[float], basis: np.ndarray) -> Unitary:
    """sum_i e^{i gamma_i} |v_i><v_i| (columns of vectors), expressed in basis."""
    g = (vectors * np.exp(1j * np.asarray(phases))) @ vectors.conj().T
    return Unitary.from_matrix(g).in_basis(basis)


def _aa_phases(cfg: TwoQubitConfig, cycles: int) -> List[float]:
    period = cycles * cfg.field.period
    phases = []
    for eta in eigensystem_rotating(cfg, allow_degenerate=True).states:
        result = propagate_exact(cfg, period, eta)
        phases.append(float(wrap_phase(aa_phase(result, eta).geometric)))
    return phases


def two_qubit_geometric_audit(cfg: TwoQubitConfig, mechanism: Mechanism,
                              grid_points: Optional[int] = None, derivative: bool = True) -> AuditReport:
    """
    Assemble the geometric part of the cycle unitary in the product qubit basis and test it.

    Berry: phases from the discrete connection of xi_1..xi_4.
    AA: total - dynamical of eta_1..eta_4 over tau and 2 tau; for unequal kappas the
    J-derivative of each phase is taken by central difference with
    delta_J = 1e-4 max(|J|, |kappa_alpha| B).
    """
    base = _untilted(cfg)
    f = base.field

    if mechanism is Mechanism.BERRY_ECHO:
        phases = [berry_phase_connection(base, i, grid_points).wrapped for i in range(4)]
        closed = [float(wrap_phase(two_qubit_berry_closed_form(f.theta, i))) for i in range(4)]
        vectors = eigensystem_two(base, 0.0, allow_degenerate=True).matrix
        verdict = factorization_test(_assemble(vectors, phases, qubit_basis_two(base)))
        logger.info(f"berry audit: factorizable={verdict.factorizable}, defect={verdict.defect:.3e}")
        return AuditReport(mechanism=mechanism.value, phases=phases, closed_form=closed, factorization=verdict)

    if mechanism is not Mechanism.AA_ZERO_DYNAMICAL:
        raise ValueError(f"audit covers Berry and AA mechanisms, not {mechanism.value}")

    vectors = eigensystem_rotating(base, allow_degenerate=True).matrix
    basis = qubit_basis_two(base, rotating=True)
    double = _aa_phases(base, 2)
    single = _aa_phases(base, 1)
    report = AuditReport(
        mechanism=mechanism.value,
        phases=double,
        closed_form=[float(wrap_phase(two_qubit_aa_closed_form(base, i, cycles=2))) for i in range(4)],
        factorization=factorization_test(_assemble(vectors, double, basis)),
        phases_single_period=single,
        factorization_single_period=factorization_test(_assemble(vectors, single, basis)),
    )

    if derivative and not base.equal_kappa:
        delta = 1e-4 * max(abs(base.J), abs(base.kappa_alpha) * f.B)
        plus = _aa_phases(base.with_J(base.J + delta), 2)
        minus = _aa_phases(base.with_J(base.J - delta), 2)
        report.dgamma_dJ = [float(wrap_phase(p - m)) / (2 * delta) for p, m in zip(plus, minus)]
        report.delta_J = delta
    if not base.equal_kappa:
        report.notes.append("unequal kappas: operating point chosen for demonstration")
    logger.info(f"aa audit: factorizable={report.factorization.factorizable}, "
                f"defect={report.factorization.defect:.3e}")
    return report
