"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, PhysicsError -> 3,
NumericalError -> 4.
"""


class GaussEntangleError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(GaussEntangleError):
    """Malformed or out-of-range scenario configuration."""


class PhysicsError(GaussEntangleError):
    """Input violates a physical requirement (unphysical state, bad precondition)."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class NumericalError(GaussEntangleError):
    """A numerical routine failed to meet its accuracy or stability contract."""
