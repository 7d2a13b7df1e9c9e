"""Exception types shared across the package."""


class QampError(Exception):
    """Base class for all package errors."""


class DimensionError(QampError, ValueError):
    """Shapes or register widths do not line up."""


class ParameterError(QampError, ValueError):
    """A scalar parameter or selector is outside its allowed range."""


class ValidationError(QampError, ValueError):
    """Data violates a structural invariant (finiteness, norm, file schema)."""


class MeasurementError(QampError, RuntimeError):
    """A projective measurement was requested for an outcome of zero weight."""

    def __init__(self, message: str, probability: float = 0.0):
        super().__init__(message)
        self.probability = probability


class MethodUndefinedError(QampError, RuntimeError):
    """The normalization-recovery ratio is undefined for these inputs."""


class EstimateUnavailableError(QampError, RuntimeError):
    """Sampling produced no usable counts for the requested estimate."""

    def __init__(self, message: str, counts=None):
        super().__init__(message)
        self.counts = dict(counts or {})
