"""Exception types shared across the package.

The hierarchy mirrors how failures are reported by the command line
driver: configuration problems exit with code 1, numerical failures
(divergence, eigensolver breakdown, out-of-domain evaluations) with
code 2.
"""


class GsbpError(Exception):
    """Base class for all package-specific errors."""


class ConstructionError(GsbpError):
    """Operator construction failed (e.g. Newton did not converge)."""


class ConfigurationError(GsbpError):
    """Invalid or inconsistent scheme configuration."""


class DomainError(GsbpError):
    """Evaluation requested outside the admissible domain."""


class DivergenceError(GsbpError):
    """Time integration produced non-finite state entries."""


class AnalysisError(GsbpError):
    """Spectral analysis failed (nonlinear operator or QR breakdown)."""
