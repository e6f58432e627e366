"""Exception types raised by numerical routines.

Input validation problems raise plain :class:`ValueError`. The classes
below signal that a computation was well posed but could not be carried
out faithfully at the requested truncation.
"""


class NumericalError(RuntimeError):
    """Base class for numerical failures."""


class TruncationError(NumericalError):
    """The chosen truncation dimension is too small for the data."""


class BranchError(NumericalError):
    """Sampled values are inconsistent with the pinned branch."""


class BlowUpError(NumericalError):
    """A time integrator produced non-finite values."""
