"""
Dense 2- and 4-dimensional linear algebra layer.
"""
from .states import QuantumState, Unitary, check_matrix, gauge_fix
from .linalg import (
    distance_up_to_global_phase,
    expm_hermitian_generator,
    makhlin_invariants,
    tensor,
)

__all__ = [
    "QuantumState",
    "Unitary",
    "check_matrix",
    "gauge_fix",
    "distance_up_to_global_phase",
    "expm_hermitian_generator",
    "makhlin_invariants",
    "tensor",
]
