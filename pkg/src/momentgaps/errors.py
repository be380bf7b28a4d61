"""Exception types raised across the solver modules."""


class MomentGapsError(Exception):
    """Base class for all library errors."""


class InvalidInput(MomentGapsError):
    """Input violates a documented precondition (length, positivity, ...)."""


class PatternMismatch(MomentGapsError):
    """A gap solver was called with data for a different gap pattern."""


class SingularLeadCorner(MomentGapsError):
    """Leading corner is not positive definite; no generating recursion."""


class NotPpsd(MomentGapsError):
    """A fully specified principal submatrix of a partial matrix is not psd."""

    def __init__(self, message, indices=None, submatrix=None):
        super().__init__(message)
        self.indices = indices
        self.submatrix = submatrix


class AssumptionViolated(MomentGapsError):
    """The rank assumption required by the one-entry completion fails."""


class NumericalRootFailure(MomentGapsError):
    """Root extraction did not produce cleanly separated real atoms."""


class MissingMoment(MomentGapsError):
    """A required bivariate moment index is absent."""


class MissingExtraMoment(MomentGapsError):
    """The curve requires an additional odd-degree moment that was not given."""


class HypothesisFailure(MomentGapsError):
    """Bivariate hypotheses (psd / curve relation / shift closure) fail."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or []
