"""
Exception hierarchy for geogates.

Every failure raised by the library derives from GeoGatesError so the CLI can
map it to an exit code in one place.
"""


class GeoGatesError(Exception):
    """Base class for all library errors"""


# linalg-core
class DimensionMismatch(GeoGatesError, ValueError):
    """Operand dimensions are not 2 or 4, or do not agree"""


class NonFiniteEntries(GeoGatesError, ValueError):
    """A matrix or vector contains NaN or Inf"""


class NonHermitianInput(GeoGatesError, ValueError):
    """A generator passed to the exponential is not Hermitian"""


class NotUnitary(GeoGatesError, ValueError):
    """Unitarity defect above Config.UNITARITY_TOL"""


class NotNormalized(GeoGatesError, ValueError):
    """State norm differs from one"""


# model
class ZeroField(GeoGatesError, ValueError):
    """Field direction undefined because B = 0"""


class DegenerateExchange(GeoGatesError, ValueError):
    """J = 0 with equal gyromagnetic ratios: the (xi_2, xi_3) subspace is degenerate"""


# evolve
class ProfileNotLinear(GeoGatesError, ValueError):
    """Closed-form propagation requested for a non-linear phi(t) profile"""


class StepCountTooSmall(GeoGatesError, ValueError):
    """Fewer steps per segment than Config.MIN_STEPS"""


class GapClosed(GeoGatesError, RuntimeError):
    """Instantaneous spectral gap below Config.GAP_TOL"""


# phase
class NotCyclic(GeoGatesError, RuntimeError):
    """Trajectory does not return to its initial ray"""


class MissingHistory(GeoGatesError, ValueError):
    """Propagation result has no energy expectation history"""


class DomainError(GeoGatesError, ValueError):
    """Argument outside the function's domain"""


# gates
class Unreachable(GeoGatesError, ValueError):
    """Requested geometric phase cannot be produced by the construction"""


class NoRealRoot(GeoGatesError, ValueError):
    """The vanishing-dynamical-phase condition has no real solution"""


class BasisUndefined(GeoGatesError, ValueError):
    """Qubit basis direction undefined (vanishing field)"""


class SolverResidualError(GeoGatesError, RuntimeError):
    """A solved parameter set fails its own residual checks"""


# cli
class InvalidAxis(GeoGatesError, ValueError):
    """Sweep axis unknown or empty"""


class ConfigError(GeoGatesError, ValueError):
    """Invalid configuration or command-line input"""
