"""Exception hierarchy shared by all subpackages."""


class HardyHeatError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HardyHeatError, ValueError):
    """Invalid domain parameters, or a point outside the domain."""


class HypothesisError(HardyHeatError, ValueError):
    """A bound was evaluated outside the range where it is proved."""


class UnsupportedError(HardyHeatError, ValueError):
    """The requested combination has no known constant or formula."""


class CapacityError(HardyHeatError, ValueError):
    """A dense computation was requested on a grid that is too large."""


class ConfigError(HardyHeatError, ValueError):
    """Malformed or inconsistent experiment configuration."""


class NumericalError(HardyHeatError, RuntimeError):
    """An iterative solver failed to reach its tolerance."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
