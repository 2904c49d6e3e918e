"""Exception types shared across the toolkit."""


class ToroidSimError(Exception):
    """Base class for all toroidsim errors."""


class DomainError(ToroidSimError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ValidityError(ToroidSimError):
    """Inputs are formally fine but outside a model's validity range."""


class PhaseMatchingError(ToroidSimError):
    """Phase matching is impossible for the given index pair."""


class NormalizationError(ToroidSimError):
    """A field profile that must carry unit norm does not."""


class ConvergenceError(ToroidSimError):
    """An iterative solver failed to reach its tolerance.

    Carries the iteration count and the last residual so callers can
    report how far the solve got.
    """

    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class ParseError(ToroidSimError):
    """A config or data file could not be parsed.

    ``line_number`` is 1-based and refers to the offending input line,
    when known.
    """

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number
