"""Exception types shared across the package.

The CLI maps these onto process exit codes, see :mod:`dris.cli`.
"""


class DrisError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DrisError, ValueError):
    """An argument lies outside the domain of a physical model."""


class DecodeError(DrisError, ValueError):
    """A control word or bit sequence cannot be decoded."""


class ScheduleError(DecodeError):
    """A space-time bitstream does not fill a whole number of slots."""


class EvanescentError(DrisError, ArithmeticError):
    """No propagating ray exists: the sine of the requested angle exceeds 1.

    Attributes
    ----------
    channel : str
        Which output was evanescent (``"reflection"``, ``"refraction"``,
        ``"blazed"`` ...).
    sine : float
        The offending sine value.
    """

    def __init__(self, channel, sine):
        self.channel = channel
        self.sine = sine
        super().__init__(f"{channel} ray is evanescent (sin = {sine:.6g})")


class TotalInternalReflectionError(DrisError, ArithmeticError):
    """Light is trapped inside a layer stack."""


class SizeCapError(DrisError, OverflowError):
    """An exhaustive search would exceed the configured evaluation cap."""
