"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so new error conditions should
reuse one of the classes below rather than raising bare exceptions.
"""


class C2fseError(Exception):
    """Base class for package errors."""


class ConfigError(C2fseError):
    """Invalid configuration value, file, or override (CLI exit code 2)."""


class DataError(C2fseError):
    """Unusable input data: bad WAV encoding, empty manifest, ... (exit code 3)."""


class NumericError(C2fseError):
    """Non-finite value reached a place that must stay finite (exit code 4)."""

    def __init__(self, message, epoch=None, step=None, component=None):
        super().__init__(message)
        self.epoch = epoch
        self.step = step
        self.component = component


class ShapeError(C2fseError, ValueError):
    """Operands with incompatible shapes were combined."""


class ZeroNormError(C2fseError, ValueError):
    """A vector that must have nonzero norm (a degenerate slice) was all zero."""
