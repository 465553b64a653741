import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinkzeta import oracle, zeta
from kinkzeta.errors import DivergenceError, DomainError, StripError, UnsupportedError
from kinkzeta.model import OperatorSpec
from kinkzeta.verification import hypergeometric_points, mellin_points, zeta_grid

LN3 = math.log(3.0)


def test_integral_rep_vanishes_at_zero_odd_d():
    for d in (1, 3):
        assert abs(zeta.zeta_integral_rep(0.0, OperatorSpec(2, 1.0, 5.0, d)).value) < 1e-10


def test_d1_derivative_is_ln3():
    spec = OperatorSpec(1, 1.0, 4.0, 1)
    assert oracle.numeric_dzeta(spec).value == pytest.approx(LN3, abs=1e-7)
    for M in (1.0, 0.3, 7.0):
        c = zeta.zeta_prime_zero(spec.with_(M=M))
        assert c.zeta_prime_zero == pytest.approx(LN3, abs=1e-14)
        assert c.delta_epsilon == pytest.approx(-LN3 / 2, abs=1e-14)


def test_d1_integral_rep_vs_mpmath():
    # one level, d = 1, s = 1/2: prefactor times an mpmath tau integral
    spec = OperatorSpec(1, 1.0, 4.0, 1)
    s = 0.5
    a, z = 1.0, 4.0
    tau = float(mpmath.quad(lambda t: (t * t - 1 + z) ** (-0.5 - s), [0, 1]))
    expected = 4 * math.gamma(s + 0.5) / (math.sqrt(4 * math.pi) * math.gamma(s)) * (1.0 / a) ** (2 * s) * tau
    assert zeta.zeta_integral_rep(s, spec).value == pytest.approx(expected, rel=1e-12)


def test_hypergeometric_matches_integral():
    spec = OperatorSpec(2, 1.0, 4.5, 3)
    a = zeta.zeta_integral_rep(0.3, spec).value
    b = zeta.zeta_hyp_rep(0.3, spec).value
    assert b == pytest.approx(a, rel=1e-8)


def test_hypergeometric_needs_noncritical():
    with pytest.raises(DomainError):
        zeta.zeta_hyp_rep(0.3, OperatorSpec(2, 1.0, 4.0, 3))


@pytest.mark.parametrize("s,spec", hypergeometric_points())
def test_hypergeometric_points(s, spec):
    assert zeta.zeta_hyp_rep(s, spec).value == pytest.approx(zeta.zeta_integral_rep(s, spec).value, rel=1e-8)


@pytest.mark.parametrize("s,spec", mellin_points())
def test_mellin_points(s, spec):
    lo, hi = zeta.mellin_strip(spec)
    assert lo < s < hi
    assert zeta.zeta_mellin_numeric(s, spec).value == pytest.approx(
        zeta.zeta_integral_rep(s, spec).value, abs=1e-7)


def test_mellin_examples():
    for s, spec in ((0.25, OperatorSpec(1, 1.0, 4.0, 1)), (1.6, OperatorSpec(2, 1.0, 5.0, 3))):
        assert zeta.zeta_mellin_numeric(s, spec).value == pytest.approx(
            zeta.zeta_integral_rep(s, spec).value, abs=1e-7)


def test_mellin_strip():
    assert zeta.mellin_strip(OperatorSpec(2, 1.0, 5.0, 3)) == (0.5, math.inf)
    assert zeta.mellin_strip(OperatorSpec(2, 1.0, 4.0, 3)) == (0.5, 1.0)
    with pytest.raises(StripError):
        zeta.zeta_mellin_numeric(1.2, OperatorSpec(2, 1.0, 4.0, 3))
    with pytest.raises(StripError):
        zeta.zeta_mellin_numeric(0.2, OperatorSpec(2, 1.0, 5.0, 3))


def test_aux_examples():
    assert zeta.aux_integrals(1, 4.0).P == pytest.approx(10.0 / 3.0, rel=1e-15)
    assert zeta.aux_integrals(1, 4.0).R == pytest.approx(LN3 / 2, rel=1e-15)
    assert zeta.aux_integrals(0, 4.0).P == 1.0


def test_j0_matches_mpmath():
    # J_0(z) = int_0^1 ln(tau^2 - 1 + z) dtau
    for z in (1.0001, 4.0, 10.0):
        expected = float(mpmath.quad(lambda t: mpmath.log(t * t - 1 + z), [0, 1]))
        assert zeta.j_integral(0, z) == pytest.approx(expected, rel=1e-13, abs=1e-14)
    assert zeta.j_integral(0, 4.0) == pytest.approx(1.2000937, abs=1e-7)
    # int_0^1 ln tau^2 dtau = -2
    assert zeta.j_integral(0, 1.0) == pytest.approx(-2.0, abs=1e-15)


@pytest.mark.parametrize("N", range(0, 9))
@pytest.mark.parametrize("z", [1.0001, 1.5, 2.0, 4.0, 10.0])
def test_aux_recurrences_vs_mpmath(N, z):
    aux = zeta.aux_integrals(N, z)
    p = float(mpmath.quad(lambda t: (t * t - 1 + z) ** N, [0, 1]))
    j = float(mpmath.quad(lambda t: (t * t - 1 + z) ** N * mpmath.log(t * t - 1 + z), [0, 1]))
    assert aux.P == pytest.approx(p, rel=1e-12, abs=1e-13)
    assert aux.J == pytest.approx(j, rel=1e-11, abs=1e-12)
    if N >= 1:
        brk = [0, math.sqrt(z - 1), 1]
        r = float(mpmath.quad(lambda t: (t * t - 1 + z) ** (N - 1.5), brk))
        assert aux.R == pytest.approx(r, rel=1e-10, abs=1e-12)


def test_aux_at_threshold():
    assert zeta.r_integral(3, 1.0) == pytest.approx(0.25)
    with pytest.raises(DivergenceError):
        zeta.r_integral(1, 1.0)
    with pytest.raises(DomainError):
        zeta.aux_integrals(2, 0.5)


def test_zeta_at_zero():
    assert zeta.zeta_at_zero(OperatorSpec(2, 1.0, 5.0, 3)) == 0.0
    assert zeta.zeta_at_zero(OperatorSpec(2, 1.0, 5.0, 1)) == 0.0
    assert zeta.zeta_at_zero(OperatorSpec(2, 1.0, 4.0, 1)) == -1.0


@pytest.mark.parametrize("spec", [OperatorSpec(2, 1.0, 5.0, 2), OperatorSpec(3, 0.5, 3.0, 4),
                                  OperatorSpec(1, 1.0, 1.0, 2)])
def test_zeta_at_zero_even_d_matches_integral_rep(spec):
    assert zeta.zeta_at_zero(spec) == pytest.approx(zeta.zeta_integral_rep(1e-9, spec).value, abs=1e-7)


def test_kink_d1():
    c = zeta.kink_correction(1.0, 1.0, 1, 1.0)
    assert c.zeta_prime_zero == pytest.approx(math.log(24.0), abs=1e-10)
    assert c.delta_epsilon == pytest.approx(-math.log(24.0) / 2, abs=1e-10)
    assert c.zeta_zero == -1.0


@pytest.mark.parametrize("d", [2, 3, 4])
def test_kink_higher_d_vs_numeric(d):
    c = zeta.kink_correction(1.0, 1.0, d, 1.0)
    assert c.zeta_prime_zero == pytest.approx(oracle.numeric_dzeta(c.spec).value, rel=1e-6)


def test_kink_d3_closed_value():
    # -(3/(8 pi))(ln 3 + 4) at m = M = 1
    c = zeta.kink_correction(1.0, 1.0, 3, 1.0)
    assert c.zeta_prime_zero == pytest.approx(-3.0 / (8 * math.pi) * (LN3 + 4.0), rel=1e-12)


def test_delta_epsilon_negative_d1():
    for n in (1, 2, 3):
        for scale in (1.01, 2.0, 10.0):
            c = zeta.mass_correction(OperatorSpec(n, 1.0, scale * n * n, 1))
            assert c.delta_epsilon < 0


@given(
    n=st.integers(1, 3), d=st.integers(1, 4),
    b=st.floats(0.3, 3.0), scale=st.floats(1.0, 3.0),
    M=st.floats(0.2, 5.0), k=st.floats(-2.0, 2.0),
)
@settings(max_examples=60, deadline=None)
def test_scale_law_property(n, d, b, scale, M, k):
    spec = OperatorSpec(n, b, scale * n * n * b * b, d, M)
    shifted = spec.with_(M=M * math.exp(k))
    slope = zeta.zeta_prime_zero(shifted).zeta_prime_zero - zeta.zeta_prime_zero(spec).zeta_prime_zero
    ref = zeta.zeta_prime_zero(spec)
    assert slope == pytest.approx(2 * k * zeta.zeta_at_zero(spec), abs=1e-9 * max(1.0, abs(ref.zeta_prime_zero)))


@given(n=st.integers(1, 3), b=st.floats(0.3, 3.0), scale=st.floats(1.001, 3.0), M=st.floats(0.2, 5.0))
@settings(max_examples=30, deadline=None)
def test_odd_d_is_scale_free(n, b, scale, M):
    for d in (1, 3):
        spec = OperatorSpec(n, b, scale * n * n * b * b, d, 1.0)
        assert zeta.zeta_prime_zero(spec.with_(M=M)).zeta_prime_zero == pytest.approx(
            zeta.zeta_prime_zero(spec).zeta_prime_zero, abs=1e-10)


@pytest.mark.parametrize("d", [3, 4])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_threshold_continuity(d, n):
    crit = OperatorSpec(n, 1.0, float(n * n), d)
    near = crit.with_(lam=(1 + 1e-6) * n * n)
    assert zeta.zeta_prime_zero(near).zeta_prime_zero == pytest.approx(
        zeta.zeta_prime_zero(crit).zeta_prime_zero, abs=1e-4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_threshold_square_root_cusp_d2(n):
    # in d = 2 the lowest transverse mode has mass mu = sqrt(lambda - n^2 b^2)
    # and contributes -mu to zeta'(0): continuous, but not to 1e-4 at eps = 1e-6
    crit = OperatorSpec(n, 1.0, float(n * n), 2)
    base = zeta.zeta_prime_zero(crit).zeta_prime_zero
    for eps in (1e-6, 1e-8, 1e-10):
        near = crit.with_(lam=(1 + eps) * n * n)
        mu = math.sqrt(near.lam - crit.lam)
        gap = zeta.zeta_prime_zero(near).zeta_prime_zero - base
        assert gap == pytest.approx(-mu, rel=2 * mu)
    assert abs(gap) < 1e-4
    near = crit.with_(lam=(1 + 1e-6) * n * n)
    assert zeta.zeta_prime_zero(near).zeta_prime_zero == pytest.approx(
        oracle.numeric_dzeta(near).value, rel=1e-6)


def test_grid_shape():
    grid = zeta_grid()
    assert len(grid) == 48
    assert sum(s.is_critical for s in grid) == 24


def test_correction_as_dict():
    c = zeta.mass_correction(OperatorSpec(1, 1.0, 4.0, 1))
    out = c.as_dict()
    assert out["spec"]["lambda"] == 4.0
    assert out["results"]["dzeta0"] == c.zeta_prime_zero
    assert out["provenance"]["representation"] == "closed_form"


def test_unsupported_dimension():
    with pytest.raises(UnsupportedError):
        zeta.zeta_prime_zero(OperatorSpec(1, 1.0, 2.0, zeta.D_MAX + 1))
