"""Exception types shared across the package."""


class WhasymError(Exception):
    """Base class for all package errors."""


class ValidationError(WhasymError):
    """Input data violates a documented precondition."""


class ZeroOnContourError(ValidationError):
    """A scalar symbol vanishes (or nearly vanishes) at a grid node."""


class WindingResolutionError(ValidationError):
    """Accumulated winding is too far from an integer to round safely."""


class NonCanonicalError(WhasymError):
    """The symbol has nonzero index; only index-zero factorization is supported."""


class DivergenceError(WhasymError):
    """Asymptotic term norms grow instead of decaying.

    Carries the history of term sup-norms observed before the failure.
    """

    def __init__(self, message, term_norms):
        super().__init__(message)
        self.term_norms = list(term_norms)


class InconsistencyError(WhasymError):
    """An internal algebraic identity failed beyond tolerance."""
