"""Exception hierarchy shared by all invpat modules."""


class InvpatError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(InvpatError):
    """Invalid model or run configuration (bad K, X, R, threshold, ...)."""


class ValidationError(InvpatError):
    """Input rejected by a model: wrong dimension, out-of-range value."""


class NoEvidenceError(InvpatError):
    """A prediction was requested but the histogram is empty."""


class DataError(InvpatError):
    """Malformed external data: CSV cells, schema problems."""


class FormatError(DataError):
    """Binary file format violation (Netpbm or model files)."""


class LevelError(InvpatError):
    """Error raised inside a level stack; carries the failing level index."""

    def __init__(self, level: int, cause: Exception):
        super().__init__(f"level {level}: {cause}")
        self.level = level
        self.cause = cause
