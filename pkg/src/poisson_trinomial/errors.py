"""Exception hierarchy shared by all modules."""


class TrinomialError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(TrinomialError, ValueError):
    """Input probabilities, thresholds or instances are malformed."""


class EmptyParity(TrinomialError):
    """The requested parity part carries zero probability mass."""


class NotRealRooted(TrinomialError):
    """A coefficient sequence did not factor into real non-positive roots."""


class HypothesisNotMet(TrinomialError):
    """The quadratic stability lemma needs L, T, W all strictly positive."""


class SizeExceeded(TrinomialError):
    """An exhaustive computation was requested beyond its hard size cap."""


class DomainViolation(ValidationError):
    """A strength differential pushes a win or loss probability outside [0, 1]."""

    def __init__(self, a, b, s, message=None):
        self.a, self.b, self.s = a, b, s
        super().__init__(message or f"strength pair (a={a}, b={b}) with differential s={s} "
                                    "is outside the linear model's validity interval")
