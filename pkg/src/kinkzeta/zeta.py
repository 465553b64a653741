"""Zeta function of the fluctuation operator and the one-loop correction.

With ``a_nu = nu b`` and ``z_nu = lambda / a_nu^2`` the Mellin transform of
the trace formula gives, for every d,

    zeta(s) = 4 Gamma(s+1-d/2) / ((4 pi)^(d/2) Gamma(s))
              * sum_nu a_nu^(d-1) (M/a_nu)^(2s) I_nu(s),
    I_nu(s) = int_0^1 (tau^2 - 1 + z_nu)^(d/2-1-s) dtau.

This integral representation is the normative definition; every other
route (hypergeometric form, numerical Mellin integral, the closed forms
for zeta(0) and zeta'(0)) is checked against it.

Closed forms for zeta'(0) follow by expanding around s = 0:

* odd d = 2N-1: ``1/Gamma(s) ~ s`` so
  ``zeta'(0) = 4 (4 pi)^(1/2-N) Gamma(3/2-N) sum a^(2N-2) R_N(z)``, except
  for d = 1 at lambda = n^2 b^2, where the nu = n term carries
  ``-Gamma(s+1/2)/(sqrt(pi) Gamma(s+1)) (M/nb)^(2s)``;
* even d = 2N: ``Gamma(s+1-N)/Gamma(s) = 1/prod_{j<N}(s-j)`` so
  ``zeta'(0) = 4 (-1)^(N-1)/((N-1)! (4 pi)^N)
  * sum a^(2N-1) [(H_{N-1} + 2 ln(M/a)) P_{N-1}(z) - J_{N-1}(z)]``,

with ``R_N = int (tau^2-1+z)^(N-3/2)``, ``P_N = int (tau^2-1+z)^N`` and
``J_N = int (tau^2-1+z)^N ln(tau^2-1+z)`` over ``tau`` in [0, 1].
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from kinkzeta.errors import (
    DivergenceError,
    DomainError,
    PoleError,
    StripError,
    UnsupportedError,
)
from kinkzeta.model import OperatorSpec, Phi4Params, spec_from_kink
from kinkzeta.oracle import quadrature
from kinkzeta.specfun import (
    binom,
    erf,
    erfc,
    gamma,
    harmonic,
    hyp2f1,
    rgamma,
)

__all__ = [
    "AUX_N_MAX",
    "D_MAX",
    "AuxIntegrals",
    "Correction",
    "Representation",
    "ZetaValue",
    "aux_integrals",
    "gamma_ratio",
    "j_integral",
    "kink_correction",
    "mass_correction",
    "mellin_strip",
    "p_integral",
    "r_integral",
    "tau_integral",
    "zeta_at_zero",
    "zeta_hyp_rep",
    "zeta_integral_rep",
    "zeta_mellin_numeric",
    "zeta_prime_zero",
]

AUX_N_MAX = 12
D_MAX = 12


class Representation(str, enum.Enum):
    INTEGRAL = "integral"
    HYPERGEOMETRIC = "hypergeometric"
    MELLIN_NUMERIC = "mellin_numeric"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class ZetaValue:
    s: float
    value: float
    representation: Representation
    abs_error_estimate: float = 0.0


@dataclass(frozen=True)
class AuxIntegrals:
    N: int
    z: float
    R: float
    P: float
    J: float


@dataclass(frozen=True)
class Correction:
    """One-loop correction; ``delta_epsilon = -zeta_prime_zero / 2`` (hbar = 1)."""

    spec: OperatorSpec
    zeta_prime_zero: float
    delta_epsilon: float
    scale_M: float
    zeta_zero: float
    abs_error_estimate: float = 0.0
    representation: Representation = Representation.CLOSED_FORM

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.as_dict(),
            "results": {
                "zeta0": self.zeta_zero,
                "dzeta0": self.zeta_prime_zero,
                "delta_epsilon": self.delta_epsilon,
            },
            "provenance": {
                "representation": self.representation.value,
                "err_est": self.abs_error_estimate,
            },
        }


# ---------------------------------------------------------------------------
# building blocks


def gamma_ratio(s: float, d: int) -> float:
    """Gamma(s + 1 - d/2) / Gamma(s), continued through removable singularities."""
    if d % 2 == 0:
        # Gamma(s+1-N)/Gamma(s) = 1 / prod_{j=1}^{N-1} (s - j)
        denom = math.prod(s - j for j in range(1, d // 2))
        if denom == 0.0:
            raise PoleError(f"Gamma(s+1-d/2)/Gamma(s) has a pole at s={s}, d={d}")
        return 1.0 / denom
    return gamma(s + 1.0 - d / 2.0) * rgamma(s)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_GL_NODES_LO, _GL_WEIGHTS_LO = np.polynomial.legendre.leggauss(10)


def _composite_gl(f, a: float, b: float, width: float = 0.25) -> tuple[float, float]:
    """Fixed composite Gauss-Legendre rule; error from a 10-node comparison.

    Fixed nodes make the result a smooth function of any parameter inside
    ``f``, which the finite-difference derivative oracle depends on.
    """
    panels = max(1, math.ceil((b - a) / width))
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    hi = float(np.sum(half * _GL_WEIGHTS * f(mid + half * _GL_NODES)))
    lo = float(np.sum(half * _GL_WEIGHTS_LO * f(mid + half * _GL_NODES_LO)))
    return hi, abs(hi - lo) + 4e-16 * abs(hi)


def tau_integral(p: float, c: float) -> tuple[float, float]:
    """``int_0^1 (tau^2 + c)^p dtau`` for ``c >= 0``; returns ``(value, err_est)``.

    For ``c = 0`` the value is the analytic continuation ``1/(2p+1)``.
    For ``c > 0`` the substitution ``tau = sqrt(c) sinh(u)`` gives the
    smooth integrand ``c^(p+1/2) cosh(u)^(2p+1)``.
    """
    if c < 0:
        raise DomainError(f"tau integral needs c >= 0, got {c}")
    q = 2.0 * p + 1.0
    if c == 0.0:
        if q == 0.0:
            raise PoleError("int_0^1 tau^(-1) dtau diverges")
        return 1.0 / q, 0.0
    sqrt_c = math.sqrt(c)
    upper = math.asinh(1.0 / sqrt_c)
    value, err = _composite_gl(lambda u: np.exp(q * np.log(np.cosh(u))), 0.0, upper)
    scale = sqrt_c**q
    return scale * value, scale * err


def _z_and_c(spec: OperatorSpec, nu: int) -> tuple[float, float]:
    a2 = (nu * spec.b) ** 2
    z = spec.lam / a2
    if nu == spec.n and spec.is_critical:
        return 1.0, 0.0
    return z, z - 1.0


# ---------------------------------------------------------------------------
# representations of zeta(s)


def zeta_integral_rep(s: float, spec: OperatorSpec) -> ZetaValue:
    """zeta_D(s) from the tau-integral representation (analytically continued)."""
    d = spec.d
    prefactor = 4.0 / (4.0 * math.pi) ** (d / 2.0)
    p = d / 2.0 - 1.0 - s
    terms, errs = [], []
    for nu in range(1, spec.n + 1):
        a = nu * spec.b
        _, c = _z_and_c(spec, nu)
        scale = a ** (d - 1) * (spec.M / a) ** (2.0 * s)
        if d == 1 and c == 0.0:
            # rgamma(s) * 1/(-2s) = -1/(2 Gamma(s+1)): the pole of the
            # integral is cancelled by the zero of 1/Gamma(s)
            weight = gamma(s + 0.5) * (-0.5 * rgamma(s + 1.0))
            integral, err = 1.0, 0.0
        else:
            weight = gamma_ratio(s, d)
            integral, err = tau_integral(p, c)
        terms.append(prefactor * weight * scale * integral)
        errs.append(abs(prefactor * weight * scale) * err)
    value = math.fsum(terms)
    err = math.fsum(errs) + 8e-16 * math.fsum(abs(x) for x in terms)
    return ZetaValue(s, value, Representation.INTEGRAL, err)


def zeta_hyp_rep(s: float, spec: OperatorSpec) -> ZetaValue:
    """Hypergeometric form, valid for lambda > n^2 b^2::

        zeta(s) = b (lambda/4pi)^(d/2-1) (M^2/lambda)^s Gamma(s+1-d/2) / (pi Gamma(s))
                  * sum_nu nu 2F1(s+1-d/2, 1; 3/2; nu^2 b^2 / lambda)
    """
    if spec.is_critical:
        raise DomainError("hypergeometric form needs lambda > n^2 b^2 (2F1 at z = 1)")
    d = spec.d
    a_par = s + 1.0 - d / 2.0
    terms = []
    for nu in range(1, spec.n + 1):
        x = (nu * spec.b) ** 2 / spec.lam
        terms.append(nu * hyp2f1(a_par, 1.0, 1.5, x))
    prefactor = (
        spec.b
        * (spec.lam / (4.0 * math.pi)) ** (d / 2.0 - 1.0)
        * (spec.M**2 / spec.lam) ** s
        * gamma_ratio(s, d)
        / math.pi
    )
    value = prefactor * math.fsum(terms)
    return ZetaValue(s, value, Representation.HYPERGEOMETRIC, 1e-14 * abs(value))


def mellin_strip(spec: OperatorSpec) -> tuple[float, float]:
    """Open interval of s where ``int_0^inf t^(s-1) gamma(t) dt`` converges.

    Small t: gamma(t) ~ t^(1-d/2), so s > d/2 - 1.  Large t: exponential
    decay unless lambda = n^2 b^2, where gamma(t) ~ (4 pi t)^((1-d)/2)
    and s < (d-1)/2.
    """
    lo = spec.d / 2.0 - 1.0
    hi = (spec.d - 1) / 2.0 if spec.is_critical else math.inf
    return lo, hi


def zeta_mellin_numeric(s: float, spec: OperatorSpec, abs_tol: float = 1e-11) -> ZetaValue:
    """zeta_D(s) = M^(2s)/Gamma(s) * int_0^inf t^(s-1) gamma(t) dt by direct quadrature.

    Only defined inside :func:`mellin_strip`; no analytic continuation.
    """
    lo, hi = mellin_strip(spec)
    if not lo < s < hi:
        raise StripError(f"s={s} outside the Mellin strip ({lo}, {hi})")
    d, lam, b, n = spec.d, spec.lam, spec.b, spec.n
    transverse = (4.0 * math.pi) ** ((1.0 - d) / 2.0)
    critical = spec.is_critical

    def erf_ratio(x: float) -> float:
        # erf(x)/x, finite at 0
        return erf(x) / x if x > 1e-8 else 2.0 / math.sqrt(math.pi) * (1.0 - x * x / 3.0)

    def head_integrand(u: float) -> float:
        # t^s gamma(t) at t = e^u, written as e^{(s+1-d/2)u} times a bounded factor
        t = math.exp(u)
        rt = math.sqrt(t)
        total = math.fsum(
            math.exp(-(lam - (nu * b) ** 2) * t) * nu * b * erf_ratio(nu * b * rt)
            for nu in range(1, n + 1)
        )
        return transverse * math.exp((s + 1.0 - d / 2.0) * u) * total

    def tail_integrand(t: float) -> float:
        total = []
        for nu in range(1, n + 1):
            a = nu * b
            if critical and nu == n:
                # the constant 1 of erf = 1 - erfc is integrated exactly below
                total.append(-erfc(a * math.sqrt(t)))
            else:
                total.append(math.exp(-(lam - a * a) * t) * erf(a * math.sqrt(t)))
        return transverse * t ** (s - 1.0 + (1.0 - d) / 2.0) * math.fsum(total)

    head, head_err = quadrature(head_integrand, -math.inf, 0.0, abs_tol=abs_tol, rel_tol=1e-13)
    tail, tail_err = quadrature(tail_integrand, 1.0, math.inf, abs_tol=abs_tol, rel_tol=1e-13)
    exact_tail = transverse / ((d - 1) / 2.0 - s) if critical else 0.0
    integral = head + tail + exact_tail
    factor = spec.M ** (2.0 * s) * rgamma(s)
    return ZetaValue(
        s, factor * integral, Representation.MELLIN_NUMERIC,
        abs(factor) * (head_err + tail_err),
    )


# ---------------------------------------------------------------------------
# auxiliary integrals R_N, P_N, J_N


def _check_aux_args(N: int, z: float) -> None:
    if N < 0 or N > AUX_N_MAX:
        raise DomainError(f"N must be in 0..{AUX_N_MAX}, got {N}")
    if not z >= 1.0:
        raise DomainError(f"z must be >= 1, got {z}")


@functools.lru_cache(maxsize=1024)
def p_integral(N: int, z: float) -> float:
    """P_N(z) by P_{k+1} = [2(k+1)(z-1) P_k + z^(k+1)] / (2k+3), P_0 = 1."""
    _check_aux_args(N, z)
    c = z - 1.0
    value = 1.0
    for k in range(N):
        value = (2.0 * (k + 1) * c * value + z ** (k + 1)) / (2 * k + 3)
    return value


@functools.lru_cache(maxsize=1024)
def j_integral(N: int, z: float) -> float:
    """J_N(z) by differentiating the P recurrence in its exponent.

    ``J_{k+1} = [z^(k+1) ln z + 2(k+1)(z-1) J_k - 2(P_{k+1} - (z-1) P_k)] / (2k+3)``
    from ``J_0 = ln z - 2 + 2 sqrt(z-1) arcsin(1/sqrt z)``.
    """
    _check_aux_args(N, z)
    c = z - 1.0
    value = math.log(z) - 2.0 + 2.0 * math.sqrt(c) * math.asin(1.0 / math.sqrt(z))
    for k in range(N):
        value = (
            z ** (k + 1) * math.log(z)
            + 2.0 * (k + 1) * c * value
            - 2.0 * (p_integral(k + 1, z) - c * p_integral(k, z))
        ) / (2 * k + 3)
    return value


@functools.lru_cache(maxsize=1024)
def r_integral(N: int, z: float) -> float:
    """R_N(z) = int_0^1 (tau^2 - 1 + z)^(N - 3/2) dtau.

    ``R_{k+1} = (2k-1)/(2k) (z-1) R_k + z^(k-1/2)/(2k)`` from
    ``R_1 = ln((sqrt z + 1)/(sqrt z - 1)) / 2``.  At z = 1 only N >= 2
    converges, with ``R_N(1) = 1/(2N-2)``.
    """
    _check_aux_args(N, z)
    if z == 1.0:
        if N <= 1:
            raise DivergenceError(f"R_{N}(1) diverges")
        return 1.0 / (2 * N - 2)
    c = z - 1.0
    if N == 0:
        return 1.0 / (c * math.sqrt(z))
    root = math.sqrt(z)
    # ln((sqrt z+1)/(sqrt z-1)) = ln((sqrt z+1)^2/c), no cancellation near z=1
    value = math.log((root + 1.0) ** 2 / c) / 2.0
    for k in range(1, N):
        value = (2 * k - 1) / (2.0 * k) * c * value + z ** (k - 0.5) / (2.0 * k)
    return value


def _quad_aux(power: float, z: float, log_weight: bool) -> float:
    c = z - 1.0
    if log_weight:
        def f(t):
            x = t * t + c
            return x**power * math.log(x)
    else:
        def f(t):
            return (t * t + c) ** power
    points = [math.sqrt(c)] if 0 < c < 1 else None
    value, _ = quadrature(f, 0.0, 1.0, abs_tol=1e-14, rel_tol=1e-14, points=points)
    return value


def _close(a: float, b: float, tol: float = 1e-10) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


@functools.lru_cache(maxsize=1024)
def aux_integrals(N: int, z: float, validate: bool = True) -> AuxIntegrals:
    """R_N, P_N and J_N at z, by recurrence.

    With ``validate`` and z > 1 each value is checked against adaptive
    quadrature of its defining integral (tolerance 1e-10, relative once
    the value exceeds 1); a mismatch raises :class:`ArithmeticError`.
    R_0(1) and R_1(1) diverge and raise :class:`DivergenceError`.
    """
    _check_aux_args(N, z)
    out = AuxIntegrals(N, z, r_integral(N, z), p_integral(N, z), j_integral(N, z))
    if validate and z > 1.0:
        checks = {
            "R": (out.R, _quad_aux(N - 1.5, z, False)),
            "P": (out.P, _quad_aux(N, z, False)),
            "J": (out.J, _quad_aux(N, z, True)),
        }
        for name, (rec, quad) in checks.items():
            if not _close(rec, quad):
                raise ArithmeticError(
                    f"{name}_{N}({z}) recurrence {rec!r} disagrees with quadrature {quad!r}"
                )
    return out


# ---------------------------------------------------------------------------
# zeta(0), zeta'(0) and the correction


def _check_d(spec: OperatorSpec) -> None:
    if spec.d > D_MAX:
        raise UnsupportedError(f"closed forms implemented for d <= {D_MAX}, got d={spec.d}")


def zeta_at_zero(spec: OperatorSpec) -> float:
    """zeta_D(0).

    Zero in odd d except d = 1 at lambda = n^2 b^2, where it is -1.  In
    even d = 2N it is ``4 (-1)^(N-1)/((N-1)! (4pi)^N) sum a^(2N-1) P_{N-1}(z)``.
    """
    _check_d(spec)
    d = spec.d
    if d % 2 == 1:
        return -1.0 if (d == 1 and spec.is_critical) else 0.0
    N = d // 2
    lead = 4.0 * (-1) ** (N - 1) / (math.factorial(N - 1) * (4.0 * math.pi) ** N)
    terms = []
    for nu in range(1, spec.n + 1):
        a = nu * spec.b
        z, _ = _z_and_c(spec, nu)
        terms.append(a ** (2 * N - 1) * p_integral(N - 1, z))
    return lead * math.fsum(terms)


def _dzeta_odd(spec: OperatorSpec) -> tuple[float, list[float]]:
    d, b, n = spec.d, spec.b, spec.n
    if d == 1:
        if spec.is_critical:
            # sum_{nu<n} ln((n+nu)/(n-nu)) = ln C(2n-1, n), plus ln(4 n^2 b^2/M^2)
            terms = [math.log(4.0 * binom(2 * n - 1, n)), 2.0 * math.log(n * b / spec.M)]
        else:
            root = math.sqrt(spec.lam)
            terms = [math.log((root + nu * b) / (root - nu * b)) for nu in range(1, n + 1)]
        return math.fsum(terms), terms
    N = (d + 1) // 2
    lead = 4.0 * (4.0 * math.pi) ** (0.5 - N) * gamma(1.5 - N)
    terms = []
    for nu in range(1, n + 1):
        a = nu * b
        z, _ = _z_and_c(spec, nu)
        terms.append(lead * a ** (2 * N - 2) * r_integral(N, z))
    return math.fsum(terms), terms


def _dzeta_even(spec: OperatorSpec) -> tuple[float, list[float]]:
    N = spec.d // 2
    lead = 4.0 * (-1) ** (N - 1) / (math.factorial(N - 1) * (4.0 * math.pi) ** N)
    h = harmonic(N - 1)
    terms = []
    for nu in range(1, spec.n + 1):
        a = nu * spec.b
        z, _ = _z_and_c(spec, nu)
        bracket = (h + 2.0 * math.log(spec.M / a)) * p_integral(N - 1, z) - j_integral(N - 1, z)
        terms.append(lead * a ** (2 * N - 1) * bracket)
    return math.fsum(terms), terms


def zeta_prime_zero(spec: OperatorSpec) -> Correction:
    """Closed-form zeta_D'(0) and the correction -zeta_D'(0)/2."""
    _check_d(spec)
    if spec.d % 2 == 1:
        value, terms = _dzeta_odd(spec)
    else:
        value, terms = _dzeta_even(spec)
    err = 1e-14 * math.fsum(abs(x) for x in terms)
    return Correction(
        spec=spec,
        zeta_prime_zero=value,
        delta_epsilon=-0.5 * value,
        scale_M=spec.M,
        zeta_zero=zeta_at_zero(spec),
        abs_error_estimate=err,
    )


def mass_correction(spec: OperatorSpec) -> Correction:
    return zeta_prime_zero(spec)


def kink_correction(m: float, g: float, d: int, M: float = 1.0) -> Correction:
    """One-loop correction around the phi^4 kink of mass m and coupling g.

    g only fixes the classical background; at one loop the correction is
    g-independent.
    """
    return mass_correction(spec_from_kink(Phi4Params(m, g), d, M))
