"""
Target gates and gate specifications.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.core.states import Unitary

PI_OVER_8 = Unitary.from_matrix(np.diag([np.exp(-1j * np.pi / 8), np.exp(1j * np.pi / 8)]))
HADAMARD = Unitary.from_matrix(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
SWAP = Unitary.from_matrix(np.array([
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1]]))
# triplet sector +1, singlet +i
SQRT_SWAP = Unitary.from_matrix(np.array([
    [1, 0, 0, 0],
    [0, (1 + 1j) / 2, (1 - 1j) / 2, 0],
    [0, (1 - 1j) / 2, (1 + 1j) / 2, 0],
    [0, 0, 0, 1]]))
CNOT = Unitary.from_matrix(np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0]]))
CZ = Unitary.from_matrix(np.diag([1, 1, 1, -1]))


class GateTarget(str, Enum):
    PI_OVER_8 = "pi8"
    HADAMARD = "hadamard"
    SQRT_SWAP = "sqrt-swap"
    CNOT = "cnot"
    CZ = "cz"
    CUSTOM = "custom"


class Mechanism(str, Enum):
    BERRY_ECHO = "berry"
    AA_ZERO_DYNAMICAL = "aa"
    EXCHANGE_DYNAMICAL = "exchange"
    HYBRID_SEQUENCE = "hybrid"


_NAMED = {
    GateTarget.PI_OVER_8: PI_OVER_8,
    GateTarget.HADAMARD: HADAMARD,
    GateTarget.SQRT_SWAP: SQRT_SWAP,
    GateTarget.CNOT: CNOT,
    GateTarget.CZ: CZ,
}


@dataclass(frozen=True)
class GateSpec:
    """What to build (target) and how (mechanism); custom targets carry their own unitary."""

    target: GateTarget
    mechanism: Mechanism
    custom: Optional[Unitary] = None

    def __post_init__(self):
        if self.target is GateTarget.CUSTOM:
            if self.custom is None:
                raise ValueError("custom target needs a unitary")
            if not isinstance(self.custom, Unitary):
                object.__setattr__(self, "custom", Unitary.from_matrix(self.custom))
        elif self.custom is not None:
            raise ValueError(f"target {self.target.value} does not take a custom unitary")

    @property
    def unitary(self) -> Unitary:
        return self.custom if self.target is GateTarget.CUSTOM else _NAMED[self.target]

    @property
    def dim(self) -> int:
        return self.unitary.dim
