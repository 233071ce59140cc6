"""Exception types shared across the package.

Each class marks a distinct failure mode so the CLI can map them to
distinct exit codes.
"""


class NonIntegralError(ValueError):
    """A rational value has p in its denominator where a p-integral one is required."""


class PrecisionError(ValueError):
    """An operation cannot certify a positive amount of p-adic precision."""


class CutoffError(PrecisionError):
    """A series truncation point could not be certified within budget."""


class NotAFieldError(ValueError):
    """An operation that needs field coefficients was given a ring domain."""


class HypothesisError(ValueError):
    """A mathematical precondition of an operation does not hold for the inputs."""


class ScaleError(ValueError):
    """An enumeration oracle was asked to run beyond its configured ceiling."""


class AttackError(ValueError):
    """The discrete-log driver failed: search budget exhausted or inconsistent inputs."""
