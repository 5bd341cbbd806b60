"""Exception hierarchy."""


class SpectralGaugeError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(SpectralGaugeError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class CapacityError(SpectralGaugeError, ValueError):
    """Instance is too large for an exact (enumerative) routine."""


class NotApplicableError(SpectralGaugeError, ValueError):
    """A closed-form bound's hypotheses are not met."""


class NotPSDError(SpectralGaugeError, ValueError):
    def __init__(self, lambda_min: float):
        self.lambda_min = lambda_min
        super().__init__(f"matrix is not positive semidefinite (lambda_min = {lambda_min:.3e})")


class NotPositiveDefiniteError(SpectralGaugeError, ValueError):
    def __init__(self, pivot: int, value: float):
        self.pivot = pivot
        self.value = value
        super().__init__(f"non-positive pivot {value:.3e} at index {pivot}")


class NumericalError(SpectralGaugeError, ArithmeticError):
    """An iterative method failed to converge within its caps."""

    def __init__(self, message: str, **diagnostics):
        self.diagnostics = diagnostics
        if diagnostics:
            details = ", ".join(f"{k}={v:.3e}" if isinstance(v, float) else f"{k}={v}"
                                for k, v in diagnostics.items())
            message = f"{message} ({details})"
        super().__init__(message)
