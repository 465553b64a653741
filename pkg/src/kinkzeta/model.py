"""Classical phi^4 model, the kink, and reflectionless potentials.

The static equation of motion ``phi'' + m^2 phi - g phi^3 = 0`` has the
separatrix solution ``phi_0 = m tanh(m x / sqrt 2) / sqrt g``.  Expanding the
action to second order around it gives ``V''(phi_0) = lambda + u(x)`` with
``lambda = 2 m^2`` and the two-level reflectionless well ``u(x) =
-6 b^2 / cosh^2(b x)``, ``b = m / sqrt 2``.  The n-level family
``u(x) = -n(n+1) b^2 / cosh^2(b x)`` has bound states at ``-nu^2 b^2``,
``nu = 1..n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.integrate as si
import scipy.special as sc

from kinkzeta.errors import InvalidSpecError

__all__ = [
    "CRITICAL_RTOL",
    "BoundState",
    "OperatorSpec",
    "Phi4Params",
    "ReflectionlessPotential",
    "bound_states",
    "first_integral_residual",
    "kink",
    "kink_derivative",
    "phi4_potential",
    "phi4_potential_dd",
    "potential_u",
    "spec_from_kink",
]

# lambda == n^2 b^2 is decided with this relative tolerance
CRITICAL_RTOL = 1e-12


@dataclass(frozen=True)
class Phi4Params:
    """Mass ``m`` and quartic coupling ``g`` of ``V = g phi^4/4 - m^2 phi^2/2``."""

    m: float
    g: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise InvalidSpecError(f"m must be positive and finite, got {self.m}")
        if not (math.isfinite(self.g) and self.g > 0):
            raise InvalidSpecError(f"g must be positive and finite, got {self.g}")


@dataclass(frozen=True)
class ReflectionlessPotential:
    n: int
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidSpecError(f"level count n must be an integer >= 1, got {self.n}")
        if not (math.isfinite(self.b) and self.b > 0):
            raise InvalidSpecError(f"b must be positive and finite, got {self.b}")

    @property
    def depth(self) -> float:
        return self.n * (self.n + 1) * self.b**2

    def __call__(self, x):
        return potential_u(x, self)


@dataclass(frozen=True)
class OperatorSpec:
    """Parameters of ``D = -d_x^2 - Laplacian_y + lam + u(x)`` in ``d`` dimensions.

    ``M`` is the mass scale entering the zeta function as ``M^(2s)``.
    The operator is non-negative only for ``lam >= n^2 b^2``; the boundary
    case ``lam == n^2 b^2`` (the kink) is admitted and reported through
    :attr:`is_critical`.
    """

    n: int
    b: float
    lam: float
    d: int
    M: float = 1.0

    def __post_init__(self):
        ReflectionlessPotential(self.n, self.b)
        if int(self.d) != self.d or self.d < 1:
            raise InvalidSpecError(f"dimension d must be an integer >= 1, got {self.d}")
        for name in ("lam", "M"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidSpecError(f"{name} must be finite, got {value}")
        if self.M <= 0:
            raise InvalidSpecError(f"mass scale M must be positive, got {self.M}")
        threshold = self.n**2 * self.b**2
        if self.lam < threshold * (1.0 - CRITICAL_RTOL):
            raise InvalidSpecError(
                f"lambda={self.lam} < n^2 b^2={threshold}: operator has negative modes"
            )

    @property
    def potential(self) -> ReflectionlessPotential:
        return ReflectionlessPotential(self.n, self.b)

    @property
    def threshold(self) -> float:
        return self.n**2 * self.b**2

    @property
    def is_critical(self) -> bool:
        return abs(self.lam / self.threshold - 1.0) <= CRITICAL_RTOL

    def with_(self, **changes) -> "OperatorSpec":
        fields = dict(n=self.n, b=self.b, lam=self.lam, d=self.d, M=self.M)
        fields.update(changes)
        return OperatorSpec(**fields)

    def as_dict(self) -> dict:
        return {"n": self.n, "b": self.b, "lambda": self.lam, "d": self.d, "M": self.M}


@dataclass(frozen=True)
class BoundState:
    """One normalized eigenpair of ``-d_x^2 + u(x)``; ``eigenvalue = -nu^2 b^2``."""

    nu: int
    eigenvalue: float
    psi: Callable


def sech(y):
    """1/cosh(y) without overflow for large |y|."""
    e = np.exp(-np.abs(y))
    return 2.0 * e / (1.0 + e * e)


def phi4_potential(phi, p: Phi4Params):
    return p.g * phi**4 / 4.0 - p.m**2 * phi**2 / 2.0


def phi4_potential_dd(phi, p: Phi4Params):
    """Second derivative V''(phi) = 3 g phi^2 - m^2."""
    return 3.0 * p.g * phi**2 - p.m**2


def kink(x, p: Phi4Params):
    return p.m * np.tanh(p.m * x / math.sqrt(2.0)) / math.sqrt(p.g)


def kink_derivative(x, p: Phi4Params):
    return p.m**2 / math.sqrt(2.0 * p.g) * sech(p.m * x / math.sqrt(2.0)) ** 2


def first_integral_residual(x, p: Phi4Params):
    """``phi'^2/2 - V(phi) - E`` along the kink; ``E = m^4/(4g)`` on the separatrix."""
    energy = p.m**4 / (4.0 * p.g)
    return 0.5 * kink_derivative(x, p) ** 2 - phi4_potential(kink(x, p), p) - energy


def potential_u(x, pot: ReflectionlessPotential):
    return -pot.depth * sech(pot.b * x) ** 2


def spec_from_kink(p: Phi4Params, d: int, M: float = 1.0) -> OperatorSpec:
    """Fluctuation operator around the kink: n = 2, b = m/sqrt 2, lambda = 2 m^2."""
    # lambda = n^2 b^2 holds up to rounding of b; CRITICAL_RTOL absorbs it
    return OperatorSpec(n=2, b=p.m / math.sqrt(2.0), lam=2.0 * p.m**2, d=d, M=M)


def _closed_form_psi(nu: int, pot: ReflectionlessPotential) -> Callable:
    b = pot.b
    if pot.n == 1:
        return lambda x: math.sqrt(b / 2.0) * sech(b * x)
    if nu == 1:
        return lambda x: math.sqrt(1.5 * b) * np.tanh(b * x) * sech(b * x)
    return lambda x: math.sqrt(3.0 * b) / 2.0 * sech(b * x) ** 2


def _legendre_psi(nu: int, pot: ReflectionlessPotential) -> Callable:
    # P_n^nu(tanh bx) solves the eigen-equation at -nu^2 b^2
    n, b = pot.n, pot.b

    def profile(x):
        return sc.lpmv(nu, n, np.tanh(b * np.asarray(x, dtype=float)))

    norm2, _ = si.quad(lambda x: float(profile(x)) ** 2, -np.inf, np.inf,
                       epsabs=1e-14, epsrel=1e-13, limit=200)
    scale = 1.0 / math.sqrt(norm2)
    return lambda x: scale * profile(x)


def bound_states(pot: ReflectionlessPotential) -> list[BoundState]:
    """Bound states ordered by ascending ``nu`` (so eigenvalues descend: -b^2, -4b^2, ...).

    For n <= 2 the eigenfunctions are the closed forms; for n >= 3 they are
    associated-Legendre profiles normalized by quadrature.
    """
    make = _closed_form_psi if pot.n <= 2 else _legendre_psi
    return [
        BoundState(nu=nu, eigenvalue=-(nu * pot.b) ** 2, psi=make(nu, pot))
        for nu in range(1, pot.n + 1)
    ]
