"""Heat-kernel trace differences for the reflectionless operator family.

``gamma0(t)`` is the regularized trace ``Tr[exp(-t H) - exp(-t H_0)]`` of the
one-dimensional operator ``H = -d_x^2 + u(x)``::

    gamma0(t) = sum_nu exp(nu^2 b^2 t) erf(nu b sqrt t)

The full d-dimensional trace factorizes over the transverse directions,
``gamma(t) = (4 pi t)^((1-d)/2) exp(-lambda t) gamma0(t)``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from kinkzeta.errors import DomainError, TraceOverflowError, UnsupportedError
from kinkzeta.model import OperatorSpec, ReflectionlessPotential, bound_states
from kinkzeta.specfun import erf

__all__ = [
    "EXP_CAP",
    "TraceCurve",
    "TraceKind",
    "e_diag",
    "free_gamma_density",
    "gamma0",
    "gamma_full",
    "log_spaced",
    "sample_trace",
]

# exp(x) overflows just above 709.78
EXP_CAP = 700.0


def _check_t(t: float) -> None:
    if not (t > 0 and math.isfinite(t)):
        raise DomainError(f"t must be positive and finite, got {t}")


def _growing_term(a: float, t: float) -> float:
    """exp(a^2 t) erf(a sqrt t), with an explicit overflow cap."""
    exponent = a * a * t
    if exponent > EXP_CAP:
        raise TraceOverflowError(
            f"exp({exponent:.6g}) exceeds the cap exp({EXP_CAP}); use gamma_full, "
            "which combines the exponent with exp(-lambda t)"
        )
    return math.exp(exponent) * erf(a * math.sqrt(t))


def gamma0(t: float, pot: ReflectionlessPotential) -> float:
    _check_t(t)
    # ascending nu for a fixed summation order
    return math.fsum(_growing_term(nu * pot.b, t) for nu in range(1, pot.n + 1))


def e_diag(x: float, t: float, pot: ReflectionlessPotential) -> float:
    """Diagonal ``G(x,t;x,0) - G_0(x,t;x,0)`` of the 1-D heat kernels (n <= 2 only)."""
    if pot.n > 2:
        raise UnsupportedError("closed-form e(x, t) needs n <= 2; use the grid oracle")
    _check_t(t)
    return math.fsum(
        float(state.psi(x)) ** 2 * _growing_term(state.nu * pot.b, t)
        for state in bound_states(pot)
    )


def free_gamma_density(t: float, d: int) -> float:
    """Trace density (4 pi t)^(-d/2) of the free heat kernel in d dimensions."""
    _check_t(t)
    return (4.0 * math.pi * t) ** (-d / 2.0)


def _gamma_full_1d(t: float, spec: OperatorSpec) -> float:
    # exp(-lambda t) folded into each term: lambda >= nu^2 b^2 keeps every
    # exponent non-positive, so no overflow cap is needed here
    return math.fsum(
        math.exp(-(spec.lam - (nu * spec.b) ** 2) * t) * erf(nu * spec.b * math.sqrt(t))
        for nu in range(1, spec.n + 1)
    )


def gamma_full(t: float, spec: OperatorSpec) -> float:
    """Regularized d-dimensional trace gamma(t) = (4 pi t)^((1-d)/2) e^{-lambda t} gamma0(t)."""
    _check_t(t)
    return free_gamma_density(t, spec.d - 1) * _gamma_full_1d(t, spec)


class TraceKind(str, enum.Enum):
    GAMMA0 = "gamma0"
    GAMMA_FULL = "gamma_full"
    FREE_DENSITY = "free_density"


@dataclass(frozen=True)
class TraceCurve:
    spec: OperatorSpec | ReflectionlessPotential
    samples: tuple[tuple[float, float], ...]
    kind: TraceKind = TraceKind.GAMMA0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ts = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("trace samples must have strictly increasing t")
        if not all(math.isfinite(v) for _, v in self.samples):
            raise DomainError("trace samples must be finite")

    @property
    def t(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.samples])

    def to_csv(self) -> str:
        lines = ["t,value"]
        lines += [f"{t:.16e},{v:.16e}" for t, v in self.samples]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        if isinstance(self.spec, OperatorSpec):
            params = self.spec.as_dict()
        else:
            params = {"n": self.spec.n, "b": self.spec.b}
        params.update(self.meta)
        return {
            "kind": self.kind.value,
            "spec": params,
            "samples": [{"t": t, "value": v} for t, v in self.samples],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def log_spaced(t_min: float, t_max: float, points: int) -> list[float]:
    if not (0 < t_min < t_max and math.isfinite(t_max)):
        raise DomainError(f"need 0 < t_min < t_max, got {t_min}, {t_max}")
    if points < 2:
        raise DomainError(f"need at least 2 points, got {points}")
    ts = np.geomspace(t_min, t_max, points).tolist()
    ts[0], ts[-1] = t_min, t_max
    return ts


def sample_trace(
    kind: TraceKind | str,
    spec: OperatorSpec,
    ts: Iterable[float],
) -> TraceCurve:
    """Tabulate one of the trace functions on the given t values."""
    kind = TraceKind(kind)
    ts = list(ts)
    if kind is TraceKind.GAMMA0:
        values = [gamma0(t, spec.potential) for t in ts]
        return TraceCurve(spec.potential, tuple(zip(ts, values)), kind)
    if kind is TraceKind.GAMMA_FULL:
        values = [gamma_full(t, spec) for t in ts]
    else:
        values = [free_gamma_density(t, spec.d) for t in ts]
    return TraceCurve(spec, tuple(zip(ts, values)), kind)
