"""Exception types raised across the package."""


class MultiGainError(Exception):
    """Base class for every error raised by this package."""


class InputError(MultiGainError, ValueError):
    """Invalid argument or malformed input."""


class InvalidProbability(InputError):
    pass


class InvalidTargetSpace(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InstanceTooSmall(InputError):
    pass


class EnumerationTooLarge(InputError):
    pass


class OptimumUnknown(InputError):
    pass


class DimacsError(InputError):
    """Problem while reading DIMACS CNF text."""


class MalformedHeader(DimacsError):
    pass


class VariableOutOfRange(DimacsError):
    pass


class ClauseCountMismatch(DimacsError):
    pass


class EmptyClause(DimacsError):
    pass


class InvalidConfig(InputError):
    pass


class InfeasibleStart(InputError):
    pass


class NotHit(InputError):
    pass


class NoImprovementObserved(InputError):
    pass


class EmptyInput(InputError):
    pass


class InvalidGainBound(InputError):
    pass


class InvalidAlpha(InputError):
    pass


class InvalidBeta(InputError):
    pass


class InvalidLambda(InputError):
    pass


class NumericalDomain(InputError):
    pass


class OutOfRange(InputError):
    pass


class DegenerateVariance(InputError):
    pass


class InsufficientData(InputError):
    pass


class MaxGenerationsExceeded(MultiGainError, RuntimeError):
    """A run used its whole generation budget without reaching the optimum.

    The partial trace is kept on ``trace`` for callers that want to inspect it.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class IoError(MultiGainError, OSError):
    """Writing to an output sink failed."""
