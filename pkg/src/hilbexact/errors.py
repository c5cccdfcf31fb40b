"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """A hypothesis of the exact formula (or of a helper) does not hold.

    ``condition`` names the failed inequality, e.g. ``"α+β ≤ 0"``.
    """

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = f"{condition} violated"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class NonConvergenceError(RuntimeError):
    """Successive truncations never settled on an integer."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedHypothesisError(ValueError):
    """No asymptotic or equidistribution case matches the surface."""


class NoAsymptoticError(ValueError):
    """The series has no exponential growth (α = β = 0)."""


class RealnessError(ArithmeticError):
    """The assembled sum kept an imaginary part above tolerance."""
