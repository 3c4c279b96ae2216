class GompertzWaveletError(Exception):
    """Base class for errors raised by gompertz_wavelets."""


class DomainError(GompertzWaveletError, ValueError):
    """An argument is outside the range an operation is defined for."""


class IngestError(GompertzWaveletError):
    """A time-series source could not be loaded."""


class DataQualityWarning(UserWarning):
    """The loaded data violates an expectation without being unusable."""


__all__ = ["GompertzWaveletError", "DomainError", "IngestError", "DataQualityWarning"]
