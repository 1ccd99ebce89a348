"""Exception hierarchy.

Every error carries a stable machine-readable ``name`` (the class name), which
the command line prints on the error stream.
"""


class NComplexError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DimensionMismatch(NComplexError, ValueError):
    pass


class DomainError(NComplexError, ValueError):
    pass


class NonInvertible(NComplexError, ArithmeticError):
    """The number lies on a nodal hypersurface.

    ``coordinates`` names the vanishing spectral coordinates, e.g.
    ``["v_minus", "rho_2"]``.
    """

    def __init__(self, coordinates, message=None):
        self.coordinates = list(coordinates)
        if message is None:
            message = "vanishing spectral coordinates: " + ", ".join(self.coordinates)
        super().__init__(message)


class DegenerateAngle(NComplexError, ValueError):
    def __init__(self, which, message=None):
        self.which = which
        super().__init__(message or f"angle undefined: {which}")


class AmplitudeUndefined(NComplexError, ValueError):
    pass


class NotConverged(NComplexError, RuntimeError):
    def __init__(self, message, estimate=None):
        self.estimate = estimate
        super().__init__(message)


class Overflow(NComplexError, OverflowError):
    pass


class InsufficientData(NComplexError, ValueError):
    pass


class SingularPath(NComplexError, ValueError):
    pass


class OnCurve(NComplexError, ValueError):
    pass
