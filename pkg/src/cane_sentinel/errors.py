"""Shared exception types.

Most errors live next to the code that raises them; only the base class and
the few exceptions shared across subsystems are defined here.
"""


class CaneSentinelError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(CaneSentinelError):
    """Inputs that must agree in shape or dimension do not."""


class FieldOutOfRange(CaneSentinelError):
    """A sensor reading field violates its documented range or charset."""
