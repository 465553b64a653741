"""Double-precision special functions used by the closed forms.

Thin, validated wrappers: the heavy lifting is done by :mod:`math` and
:mod:`scipy.special`; this module adds the domain checks and typed errors
the rest of the package relies on.
"""

import math
import sys

import numpy as np
import scipy.special as sc

from kinkzeta.errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "binom",
    "digamma",
    "erf",
    "erfc",
    "gamma",
    "harmonic",
    "hyp2f1",
    "is_nonpositive_integer",
    "rgamma",
]


def is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(s: float) -> float:
    """Euler Gamma function.

    Raises :class:`PoleError` at s = 0, -1, -2, ...
    """
    if is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s={s}")
    return math.gamma(s)


def rgamma(s: float) -> float:
    """Reciprocal Gamma 1/Gamma(s); entire, zero at the poles of Gamma."""
    if is_nonpositive_integer(s):
        return 0.0
    return float(sc.rgamma(s))


def digamma(s: float) -> float:
    if is_nonpositive_integer(s):
        raise PoleError(f"digamma has a pole at s={s}")
    return float(sc.digamma(s))


def erf(x: float) -> float:
    return math.erf(x)


def erfc(x: float) -> float:
    return math.erfc(x)


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real 0 <= z < 1."""
    if is_nonpositive_integer(c):
        raise PoleError(f"2F1 undefined for c={c}")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"2F1 supported only for 0 <= z < 1, got z={z}")
    value = float(sc.hyp2f1(a, b, c, z))
    if not np.isfinite(value):
        raise ConvergenceError(f"2F1({a}, {b}; {c}; {z}) did not converge")
    return value


def binom(p: int, q: int) -> int:
    """Exact binomial coefficient C(p, q)."""
    if p < 0 or not 0 <= q <= p:
        raise DomainError(f"binomial requires 0 <= q <= p, got p={p}, q={q}")
    value = math.comb(p, q)
    if value > sys.float_info.max:
        raise OverflowError(f"C({p}, {q}) exceeds double range")
    return value


def harmonic(k: int) -> float:
    """H_k = sum_{j=1}^{k} 1/j, with H_0 = 0."""
    return math.fsum(1.0 / j for j in range(1, k + 1))
