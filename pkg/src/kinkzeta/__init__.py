"""One-loop corrections to static phi^4 solutions from the spectral zeta function.

The fluctuation operator around a kink (or any n-level reflectionless
background) is ``D = -d^2/dx^2 - Laplacian_y + lambda + u(x)`` with
``u(x) = -n(n+1) b^2 / cosh^2(b x)``.  This package evaluates its zeta
function, the derivative at zero and the resulting correction
``delta_epsilon = -zeta'(0)/2`` in closed form, and carries independent
numerical oracles for every closed form.
"""

from kinkzeta.errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    InvalidSpecError,
    KinkZetaError,
    PoleError,
    StripError,
    TraceOverflowError,
)
from kinkzeta.model import (
    BoundState,
    OperatorSpec,
    Phi4Params,
    ReflectionlessPotential,
    bound_states,
    kink,
    spec_from_kink,
)
from kinkzeta.heatkernel import e_diag, free_gamma_density, gamma0, gamma_full
from kinkzeta.zeta import (
    AuxIntegrals,
    Correction,
    ZetaValue,
    aux_integrals,
    kink_correction,
    mass_correction,
    zeta_at_zero,
    zeta_hyp_rep,
    zeta_integral_rep,
    zeta_mellin_numeric,
    zeta_prime_zero,
)

__version__ = "0.1.0"

__all__ = [
    "AuxIntegrals",
    "BoundState",
    "ConvergenceError",
    "Correction",
    "DivergenceError",
    "DomainError",
    "InvalidSpecError",
    "KinkZetaError",
    "OperatorSpec",
    "Phi4Params",
    "PoleError",
    "ReflectionlessPotential",
    "StripError",
    "TraceOverflowError",
    "ZetaValue",
    "aux_integrals",
    "bound_states",
    "e_diag",
    "free_gamma_density",
    "gamma0",
    "gamma_full",
    "kink",
    "kink_correction",
    "mass_correction",
    "spec_from_kink",
    "zeta_at_zero",
    "zeta_hyp_rep",
    "zeta_integral_rep",
    "zeta_mellin_numeric",
    "zeta_prime_zero",
]
