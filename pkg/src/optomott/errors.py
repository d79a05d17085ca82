"""Exception hierarchy shared across the package."""


class OptomottError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(OptomottError):
    """A configuration file or scenario definition is invalid."""


class NumericalError(OptomottError):
    """A numerical procedure failed to produce a trustworthy result."""


class ConvergenceError(NumericalError):
    """An iterative solver exhausted its iteration budget."""


class NoBistabilityError(NumericalError):
    """The cavity response is single-valued; there are no fold points."""


class EigensolverError(NumericalError):
    """A band-structure eigenpair failed its residual check."""


class GaugeError(NumericalError):
    """A Bloch function vanishes at the well center; the phase cannot be fixed."""
