"""Exception hierarchy shared by every module of the package."""


class NodalVoidError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NodalVoidError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NonConvergence(NodalVoidError):
    """An error budget could not be met within the allowed number of terms."""


class Overflow(NodalVoidError, OverflowError):
    """A value does not fit in the floating range; use the log-scaled variant."""


class BracketFailure(NodalVoidError):
    """A sign change could not be isolated for a root finder."""


class PoleProximity(NodalVoidError):
    """A cross ratio was requested too close to one of its poles."""


class QuadratureUnconverged(NodalVoidError):
    """Doubling the number of quadrature nodes kept moving the result."""


class DivergentEnvelope(NodalVoidError):
    """A geometric series factor (1 - q)^-2 was requested with q >= 1."""


class NondegeneracyRequired(NodalVoidError):
    """An operation needs a passing nondegeneracy certificate."""


class RampViolation(NodalVoidError):
    """A cutoff ramp exceeds its derivative budget."""


class KnTooLarge(NodalVoidError):
    """The slack exponent K_N breaks the condition that merges the radius forms."""


class CertificationFailed(NodalVoidError):
    """A void certificate could not be established; the message names the failed inequality."""
