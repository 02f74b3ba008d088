"""Exception types shared across the package."""


class SbboError(Exception):
    """Base class for all package-specific errors."""


class EncodingError(SbboError, ValueError):
    """A point cannot be encoded (dimension mismatch, continuous dim, ...)."""


class InvalidDimensionError(SbboError, ValueError):
    """A dimension index is out of range or has the wrong domain type."""


class NumericalError(SbboError, RuntimeError):
    """A linear-algebra step failed beyond recovery.

    Carries the largest jitter that was attempted before giving up.
    """

    def __init__(self, message, jitter=None):
        super().__init__(message)
        self.jitter = jitter


class NotFittedError(SbboError, RuntimeError):
    """A surrogate was queried before fitting produced any posterior state."""


class SpaceTooLargeError(SbboError, ValueError):
    """An exhaustive operation was requested on a space beyond its size cap."""


class FoldingBackendError(SbboError, RuntimeError):
    """The external folding program failed or produced unparseable output.

    Carries the captured program output for diagnosis.
    """

    def __init__(self, message, output=None):
        super().__init__(message)
        self.output = output
