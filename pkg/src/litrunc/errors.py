"""Exception hierarchy shared by every module."""


class LitruncError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LitruncError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ResourceLimitError(LitruncError):
    """The request would exceed a configured computational limit."""


class NoRootError(LitruncError):
    """A bracketed solve found no sign change in its search interval."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class QuadratureError(LitruncError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class CacheError(LitruncError):
    """A persisted prime-count cache disagrees with the sieve."""
