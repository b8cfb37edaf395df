"""Exception types raised by the solver, simulator and analysis code."""


class LQNetError(Exception):
    """Base class for all package errors."""


class DimensionError(LQNetError, ValueError):
    """Efforts, intentions and parameters disagree on the number of players."""


class SpectralConditionViolated(LQNetError):
    """2*beta <= comp * lambda_max(G): no unique interior effort equilibrium."""


class ConcavityViolated(LQNetError):
    """beta <= comp * lambda_max(G): total welfare is not concave in efforts."""


class NonConvergence(LQNetError):
    """The bounded fixed-point iteration did not reach tolerance."""


class EnumerationGuard(LQNetError, ValueError):
    """Group too large for exhaustive enumeration."""


class ConfigError(LQNetError, ValueError):
    """Invalid or inconsistent simulation configuration."""


class NoLinks(LQNetError):
    """Window contains no realized links, so a link fraction is undefined."""
