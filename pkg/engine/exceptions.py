"""Error types raised by the engine.

DomainError subclasses mean the input lies outside what the construction
accepts (the CLI exits with code 2). VerificationError subclasses mean a
computed object failed one of its own consistency checks (exit code 3).
"""


class BoundarySeriesError(Exception):
    """Base error."""

    exit_code = 1

    def __init__(self, message, observed=None, expected=None, tolerance=None):
        super().__init__(message)
        self.message = message
        self.observed = observed
        self.expected = expected
        self.tolerance = tolerance

    def to_dict(self):
        """Convert error to dictionary."""
        return {
            'error': type(self).__name__,
            'message': self.message,
            'observed': self.observed,
            'expected': self.expected,
            'tolerance': self.tolerance
        }


class DomainError(BoundarySeriesError):
    exit_code = 2


class VerificationError(BoundarySeriesError):
    exit_code = 3


# hyperbolic core
class PoleAtInput(DomainError):
    pass


class NotHyperbolic(DomainError):
    pass


class DegenerateGeodesics(DomainError):
    pass


# polygons
class IndexOutOfRange(DomainError):
    pass


class OrderViolation(DomainError):
    pass


class NoVertex(DomainError):
    pass


class NotDiskPreserving(VerificationError):
    pass


class PolygonInvariantError(VerificationError):
    pass


# Maskit chart
class OutOfDomain(DomainError):
    pass


# boundary dynamics
class NotInDomain(DomainError):
    pass


class Ambiguous(DomainError):
    pass


class MarkovViolation(VerificationError):
    pass


class NoConvergence(VerificationError):
    pass


# flexibility solver
class TargetOutOfRange(DomainError):
    pass


class BracketFailure(DomainError):
    pass


class InvalidInput(DomainError):
    pass
