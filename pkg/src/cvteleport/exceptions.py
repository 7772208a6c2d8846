"""Exception hierarchy shared across the package.

Domain errors flag unphysical or out-of-contract inputs; numerical errors
flag a computation that could not be carried out reliably.  The command-line
front end maps these onto distinct exit codes.
"""


class CVTeleportError(Exception):
    """Base class for all package errors."""


class DomainError(CVTeleportError, ValueError):
    """Input outside the supported parameter domain (unphysical or invalid)."""


class UnsupportedSamplerError(DomainError):
    """Requested a sampler for a state that has none implemented."""


class NumericalError(CVTeleportError, ArithmeticError):
    """A numerical evaluation failed (non-finite values, lost precision)."""


class InternalConsistencyError(NumericalError):
    """A cross-check that should hold by construction failed."""


class ConvergenceError(NumericalError):
    """An iterative solver did not converge.  Carries the best iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SamplerEfficiencyError(NumericalError):
    """A rejection sampler's acceptance rate collapsed."""


class ThresholdNotFoundError(CVTeleportError):
    """A scan finished without reaching its target.  Carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
