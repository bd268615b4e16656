"""Exception hierarchy shared by every module."""


class ThinnessError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(ThinnessError, ValueError):
    """An argument violates a documented precondition."""


class SizeError(ThinnessError):
    """The instance exceeds a configured exact-computation cap."""


class DomainError(ThinnessError, ValueError):
    """The quantity is undefined for this input (e.g. diameter of a disconnected graph)."""


class CertificationError(ThinnessError):
    """A witness or certificate failed re-verification."""


class ConfigError(ThinnessError):
    """A campaign configuration could not be read or validated."""
