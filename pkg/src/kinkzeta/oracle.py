"""Independent numerical ground truth.

Nothing here uses the closed forms it is meant to check:

* :func:`fd_spectrum` diagonalizes a second-order finite-difference
  Schroedinger operator with Dirichlet ends;
* :func:`fd_heat_trace_diff` sums ``exp(-mu t)`` over the discrete spectra
  with and without the potential, optionally Richardson-extrapolated in h;
* :func:`numeric_dzeta` differentiates the integral representation of the
  zeta function by central differences;
* :func:`quadrature` is the general-purpose adaptive integrator.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.integrate as si
from scipy.linalg import eigvalsh_tridiagonal

from kinkzeta.errors import ConvergenceError, DomainError
from kinkzeta.model import OperatorSpec, ReflectionlessPotential, potential_u

__all__ = [
    "DerivativeEstimate",
    "Grid",
    "SpectrumResult",
    "fd_heat_trace_diff",
    "fd_spectrum",
    "numeric_dzeta",
    "quadrature",
]


def quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-12,
    points: Sequence[float] | None = None,
    limit: int = 400,
) -> tuple[float, float]:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``(a, b)``; ``b`` may be ``inf``.

    Returns ``(value, err_est)``.  Integrable endpoint singularities are
    handled by the extrapolating QUADPACK drivers.  Raises
    :class:`ConvergenceError` when the subdivision limit is hit before the
    error estimate drops below ``max(abs_tol, rel_tol*|value|)``.
    """
    if abs_tol <= 0:
        raise DomainError("abs_tol must be positive")
    kwargs = dict(epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = [p for p in points if a < p < b]
    out = si.quad(f, a, b, **kwargs)
    value, err = out[0], out[1]
    ier = out[3] if len(out) > 3 else 0
    if not math.isfinite(value):
        raise ConvergenceError(f"quadrature over ({a}, {b}) produced {value}")
    if ier and err > 10 * max(abs_tol, rel_tol * abs(value)):
        raise ConvergenceError(
            f"quadrature over ({a}, {b}) did not converge: err_est={err:.3g}"
        )
    return value, err


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``N`` points on ``[-L, L]``, spacing ``h = 2L/(N-1)``."""

    L: float
    N: int

    def __post_init__(self):
        if not self.L > 0:
            raise DomainError(f"half width must be positive, got {self.L}")
        if self.N < 16:
            raise DomainError(f"need at least 16 points, got {self.N}")

    @property
    def h(self) -> float:
        # computed directly: x[1] - x[0] loses ~log10(L/h) digits
        return 2.0 * self.L / (self.N - 1)

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.N)

    def refined(self) -> "Grid":
        """Same interval, half the spacing."""
        return Grid(self.L, 2 * self.N - 1)


REFERENCE_GRID = Grid(20.0, 4000)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    grid: Grid
    potential_id: str

    @property
    def bound(self) -> np.ndarray:
        return self.eigenvalues[self.eigenvalues < 0]


def _potential_id(pot: ReflectionlessPotential | None) -> str:
    return "free" if pot is None else f"reflectionless(n={pot.n},b={pot.b!r})"


def _sturm_count(w: list[float], sigma: float) -> int:
    """Eigenvalues of tridiag(-1, 2 + w, -1) below ``sigma``.

    Runs the LDL^T pivot recursion on ``p = q - 1`` instead of ``q``; for
    eigenvalues near the bottom of the band ``q ~ 1`` and the shifted form
    avoids cancelling ``2 + w`` against ``1/q``.
    """
    count = 0
    p = 1.0 + w[0] - sigma
    if p < -1.0:
        count += 1
    for wi in w[1:]:
        q = 1.0 + p
        if q == 0.0:
            q = 1e-300
        if 0.5 < abs(q) < 2.0:
            p = wi - sigma + p / q
        else:
            p = wi - sigma + 1.0 - 1.0 / q
        if p < -1.0:
            count += 1
    return count


def _refine_bound(w: list[float], h: float, estimate: float, index: int) -> float:
    """Bisect eigenvalue number ``index`` (0-based) to full relative precision."""
    h2 = h * h
    width = 1e-7 * max(1.0, abs(estimate))
    lo, hi = (estimate - width) * h2, (estimate + width) * h2
    while _sturm_count(w, lo) > index:
        lo -= (hi - lo)
    while _sturm_count(w, hi) <= index:
        hi += (hi - lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _sturm_count(w, mid) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi) / h2


def _operator(grid: Grid, pot: ReflectionlessPotential | None):
    h = grid.h
    u = np.zeros(grid.N) if pot is None else potential_u(grid.x, pot)
    return u, 2.0 / h**2 + u, np.full(grid.N - 1, -1.0 / h**2)


def _eigvals(diag, off, upper):
    try:
        if upper is None:
            return np.array(eigvalsh_tridiagonal(diag, off), dtype=float)
        return np.array(
            eigvalsh_tridiagonal(diag, off, select="v", select_range=(-np.inf, upper)),
            dtype=float,
        )
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc


@functools.lru_cache(maxsize=32)
def _bound_eigenvalues(grid: Grid, pot: ReflectionlessPotential) -> tuple[float, ...]:
    u, diag, off = _operator(grid, pot)
    rough = _eigvals(diag, off, 0.0)
    w = (grid.h**2 * u).tolist()
    return tuple(_refine_bound(w, grid.h, mu, k) for k, mu in enumerate(rough[rough < 0]))


@functools.lru_cache(maxsize=32)
def _spectrum(grid: Grid, pot: ReflectionlessPotential | None, upper: float | None):
    _, diag, off = _operator(grid, pot)
    mu = _eigvals(diag, off, upper)
    if pot is not None:
        bound = _bound_eigenvalues(grid, pot)
        mu[: len(bound)] = bound
    mu.setflags(write=False)
    return mu


def fd_spectrum(
    grid: Grid,
    pot: ReflectionlessPotential | None,
    upper: float | None = None,
) -> SpectrumResult:
    """Eigenvalues of the Dirichlet finite-difference ``-d_x^2 + u(x)``, ascending.

    ``pot=None`` gives the free operator.  With ``upper`` only eigenvalues
    below it are returned.  Negative eigenvalues are polished by Sturm
    bisection so they carry full relative precision.
    """
    mu = _spectrum(grid, pot, upper)
    return SpectrumResult(mu, grid, _potential_id(pot))


def _free_dirichlet_spectrum(grid: Grid) -> np.ndarray:
    # exact eigenvalues of tridiag(-1, 2, -1)/h^2
    j = np.arange(1, grid.N + 1)
    return 4.0 * np.sin(j * np.pi / (2 * (grid.N + 1))) ** 2 / grid.h**2


def _plain_trace_diff(grid: Grid, pot: ReflectionlessPotential, t: float) -> float:
    # exp(-mu t) < e^-80 contributes nothing at double precision
    upper = 80.0 / t
    mu = fd_spectrum(grid, pot, upper=upper).eigenvalues
    mu0 = _free_dirichlet_spectrum(grid)
    mu0 = mu0[mu0 < upper]
    return math.fsum(np.exp(-mu * t)) - math.fsum(np.exp(-mu0 * t))


def fd_heat_trace_diff(
    grid: Grid,
    pot: ReflectionlessPotential | None,
    t: float,
    levels: int = 1,
) -> float:
    """Grid approximation of ``Tr[exp(-tH) - exp(-tH_0)]``.

    ``levels=1`` is the plain sum on ``grid``; its error is ``O(h^2)`` with
    a boundary error ``~exp(-2bL)``.  ``levels=k`` repeats the sum on
    ``k`` successively halved spacings and Richardson-extrapolates away the
    ``h^2 .. h^(2k-2)`` terms.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if pot is None:
        return 0.0
    if levels < 1:
        raise DomainError("levels must be >= 1")
    table = []
    g = grid
    for _ in range(levels):
        table.append(_plain_trace_diff(g, pot, t))
        g = g.refined()
    for k in range(1, levels):
        factor = 4.0**k
        table = [(factor * fine - coarse) / (factor - 1.0) for coarse, fine in zip(table, table[1:])]
    return table[0]


@dataclass(frozen=True)
class DerivativeEstimate:
    """Central-difference ``zeta'(0)`` with a Richardson cross-check at ``h/2``."""

    value: float
    richardson: float
    err_est: float
    flagged: bool


def numeric_dzeta(spec: OperatorSpec, h: float = 1e-5, rtol_flag: float = 1e-6) -> DerivativeEstimate:
    from kinkzeta.zeta import zeta_integral_rep

    def central(step):
        plus = zeta_integral_rep(step, spec).value
        minus = zeta_integral_rep(-step, spec).value
        return (plus - minus) / (2.0 * step)

    coarse = central(h)
    fine = central(h / 2.0)
    richardson = (4.0 * fine - coarse) / 3.0
    err = abs(coarse - fine)
    flagged = err > rtol_flag * max(abs(richardson), 1e-300)
    return DerivativeEstimate(coarse, richardson, err, flagged)
