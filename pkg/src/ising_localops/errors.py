"""Exception types shared across the package."""


class SingularityError(ValueError):
    """Evaluation point is too close to a pole of a meromorphic kernel."""


class ResourceLimitError(RuntimeError):
    """A combinatorial enumeration would exceed the configured size guard."""


class AccuracyError(RuntimeError):
    """A quadrature or extrapolation did not converge to the requested tolerance."""
