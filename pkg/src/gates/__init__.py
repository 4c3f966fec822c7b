"""
Geometric single-qubit gates and the two-qubit exchange / audit layer.
"""
from src.gates.targets import CNOT, CZ, HADAMARD, PI_OVER_8, SQRT_SWAP, SWAP, GateSpec, GateTarget, Mechanism

__all__ = ["CNOT", "CZ", "HADAMARD", "PI_OVER_8", "SQRT_SWAP", "SWAP", "GateSpec", "GateTarget", "Mechanism"]
