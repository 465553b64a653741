"""Exception hierarchy.

Every numerical failure is raised as a subclass of :class:`KinkZetaError`
so callers (the CLI in particular) can tell bad input apart from a
numerical breakdown.
"""


class KinkZetaError(Exception):
    """Base class for all package errors."""


class InvalidSpecError(KinkZetaError, ValueError):
    """Parameters violate a model invariant (e.g. lambda < n^2 b^2)."""


class PoleError(KinkZetaError, ValueError):
    """Evaluation requested at a pole of a meromorphic function."""


class DomainError(KinkZetaError, ValueError):
    """Argument outside the domain an operation supports."""


class StripError(DomainError):
    """Mellin integral requested outside its strip of convergence."""


class DivergenceError(KinkZetaError, ArithmeticError):
    """An integral that diverges at the requested argument."""


class ConvergenceError(KinkZetaError, ArithmeticError):
    """Series, quadrature or eigensolver failed to reach its tolerance."""


class TraceOverflowError(KinkZetaError, OverflowError):
    """A heat-trace term would exceed double-precision range."""


class UnsupportedError(KinkZetaError, NotImplementedError):
    """Closed form not available for the requested parameters."""
