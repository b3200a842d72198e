"""Exception hierarchy.

The CLI maps these onto exit codes: input problems exit 2, soundness-window
problems exit 3, invariant violations exit 1.
"""


class SocleProbeError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InputError(SocleProbeError, ValueError):
    """Malformed or unsupported input (bad ring file, non-prime char, ...)."""

    exit_code = 2


class DimensionMismatch(InputError):
    pass


class UnsupportedInput(InputError):
    """Inhomogeneous data, wrong Krull dimension for an operation, etc."""


class NotCertified(InputError):
    """An operation needed a certified system of parameters and got none."""


class ContainmentError(InputError):
    """An ideal containment required by a map does not hold."""


class WindowError(SocleProbeError):
    """A computation needed degrees beyond the truncation window or budget."""

    exit_code = 3


class InconclusiveError(WindowError):
    """A search ran out of window without a verdict."""


class InvariantViolation(SocleProbeError, AssertionError):
    """An internal mathematical invariant failed; indicates a bug."""

    exit_code = 1
