"""Exception hierarchy shared across the package."""


class CrwError(Exception):
    """Base class for all crwscatter errors."""


class DomainError(CrwError, ValueError):
    """Input outside the physical or mathematical domain of an operation."""


class PoleError(CrwError, ZeroDivisionError):
    """Lossless resonant divergence: energy exactly on an undamped cavity pole."""


class SingularMatrixError(CrwError, ArithmeticError):
    """Scattering matrix denominator vanishing below the relative threshold."""


class ConvergenceError(CrwError, RuntimeError):
    """Lattice solve produced residuals above the accepted level."""


class ConfigError(CrwError, ValueError):
    """Malformed sweep or CLI configuration."""
