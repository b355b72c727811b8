"""Exception types shared across the package."""


class FracstableError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracstableError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EvaluationError(FracstableError):
    """A numerical evaluation failed to reach the requested accuracy.

    Carries the best available partial result and an error bound so callers
    can decide whether to accept it anyway.
    """

    def __init__(self, message, partial=None, bound=None):
        super().__init__(message)
        self.partial = partial
        self.bound = bound


class RootNotFoundError(FracstableError):
    """Bracketing failed: no sign change on the search interval."""


class SamplerError(FracstableError):
    """A sampling routine failed (e.g. inverse-CDF iteration did not converge)."""
