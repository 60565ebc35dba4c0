"""Exception types shared by every module of the toolkit."""


class DbarKitError(Exception):
    """Base class for all toolkit-specific failures."""


class ParameterDomainError(DbarKitError, ValueError):
    """A parameter lies outside its mathematical domain (alpha < 0, m <= 0, ...)."""


class DivergenceError(DbarKitError, ArithmeticError):
    """A moment integral diverges, or the integrand produced non-finite values.

    ``order`` names the offending moment order when known.
    """

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class QuadratureError(DbarKitError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision budget.

    ``estimate`` carries the achieved error estimate, ``value`` the best
    integral value so far.
    """

    def __init__(self, message: str, estimate: float | None = None,
                 value: complex | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.value = value


class SeriesTruncationError(DbarKitError, ArithmeticError):
    """A kernel series could not meet its tail bound within the term budget."""


class ConvergenceDomainError(DbarKitError, ValueError):
    """Evaluation point lies outside the domain of convergence of a series."""


class InconclusiveSupremumError(DbarKitError, RuntimeError):
    """A numerical supremum peaked on the search boundary; enlarge the radius."""
