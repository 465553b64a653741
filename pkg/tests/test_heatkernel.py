import json
import math

import numpy as np
import pytest
import scipy.integrate as si
from hypothesis import given, settings
from hypothesis import strategies as st

from kinkzeta import heatkernel as hk
from kinkzeta.errors import DomainError, TraceOverflowError, UnsupportedError
from kinkzeta.model import OperatorSpec, ReflectionlessPotential
from kinkzeta.verification import laplace_of_e_diag

ONE = ReflectionlessPotential(1, 1.0)
TWO = ReflectionlessPotential(2, 1.0)


def test_gamma0_one_level():
    assert hk.gamma0(1.0, ONE) == pytest.approx(math.e * math.erf(1.0), rel=1e-15)


def test_gamma0_two_levels():
    expected = math.e * math.erf(1.0) + math.exp(4.0) * math.erf(2.0)
    assert hk.gamma0(1.0, TWO) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_small_t_law(n):
    # gamma0 ~ n(n+1) b sqrt(t/pi) as t -> 0
    pot = ReflectionlessPotential(n, 0.7)
    t = 1e-8
    expected = n * (n + 1) * 0.7 * math.sqrt(t / math.pi)
    assert hk.gamma0(t, pot) == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_large_t_law_critical(n):
    spec = OperatorSpec(n, 1.0, float(n * n), 1)
    assert hk.gamma_full(60.0, spec) == pytest.approx(1.0, abs=1e-10)


def test_large_t_decay_noncritical():
    spec = OperatorSpec(2, 1.0, 5.0, 1)
    assert hk.gamma_full(30.0, spec) == pytest.approx(math.exp(-30.0), rel=1e-10)


@given(st.floats(min_value=1e-4, max_value=50.0), st.integers(min_value=2, max_value=6))
@settings(max_examples=50)
def test_multiplicativity(t, d):
    spec = OperatorSpec(2, 1.0, 4.5, d)
    lhs = hk.gamma_full(t, spec)
    rhs = hk.free_gamma_density(t, d - 1) * hk.gamma_full(t, spec.with_(d=1))
    assert lhs == pytest.approx(rhs, rel=1e-14)


def test_free_density():
    assert hk.free_gamma_density(1.0 / (4 * math.pi), 3) == pytest.approx(1.0)
    assert hk.free_gamma_density(2.0, 0) == 1.0


def test_overflow_cap():
    pot = ReflectionlessPotential(2, 10.0)
    with pytest.raises(TraceOverflowError):
        hk.gamma0(10.0, pot)
    # the combined exponent in gamma_full never overflows
    assert math.isfinite(hk.gamma_full(10.0, OperatorSpec(2, 10.0, 400.0, 1)))


@pytest.mark.parametrize("t", [0.0, -1.0, float("inf"), float("nan")])
def test_bad_t(t):
    with pytest.raises(DomainError):
        hk.gamma0(t, ONE)


@pytest.mark.parametrize("pot", [ONE, TWO, ReflectionlessPotential(2, 0.6)])
@pytest.mark.parametrize("t", [0.1, 1.0])
def test_e_diag_integrates_to_gamma0(pot, t):
    val, _ = si.quad(lambda x: hk.e_diag(x, t, pot), -np.inf, np.inf, epsabs=1e-12, epsrel=1e-12)
    assert val == pytest.approx(hk.gamma0(t, pot), rel=1e-10)


def test_e_diag_needs_closed_form():
    with pytest.raises(UnsupportedError):
        hk.e_diag(0.0, 1.0, ReflectionlessPotential(3, 1.0))


@pytest.mark.parametrize("pot,x,p", [(ONE, 0.3, 9.0), (TWO, 0.8, 6.5), (TWO, -2.0, 20.0)])
def test_laplace_transform_of_e_diag(pot, x, p):
    from kinkzeta.model import bound_states
    expected = sum(float(s.psi(x)) ** 2 * s.nu / (p - s.nu**2) for s in bound_states(pot)) / math.sqrt(p)
    assert laplace_of_e_diag(x, p, pot) == pytest.approx(expected, abs=1e-6)


def test_log_spaced():
    ts = hk.log_spaced(0.05, 5.0, 5)
    assert ts[0] == 0.05 and ts[-1] == 5.0
    np.testing.assert_allclose(np.diff(np.log(ts)), math.log(10.0) / 2, rtol=1e-12)
    with pytest.raises(DomainError):
        hk.log_spaced(1.0, 1.0, 5)
    with pytest.raises(DomainError):
        hk.log_spaced(0.1, 1.0, 1)


def test_trace_curve_validation():
    with pytest.raises(DomainError):
        hk.TraceCurve(ONE, ((1.0, 0.0), (0.5, 0.0)))


def test_sample_trace_outputs():
    spec = OperatorSpec(2, 1.0, 4.0, 2)
    curve = hk.sample_trace("gamma_full", spec, hk.log_spaced(0.1, 1.0, 3))
    lines = curve.to_csv().splitlines()
    assert lines[0] == "t,value" and len(lines) == 4
    assert float(lines[1].split(",")[1]) == curve.values[0]
    data = json.loads(curve.to_json())
    assert data["kind"] == "gamma_full" and data["spec"]["lambda"] == 4.0
    assert [s["t"] for s in data["samples"]] == curve.t.tolist()
    g0 = hk.sample_trace(hk.TraceKind.GAMMA0, spec, [1.0])
    assert g0.values[0] == hk.gamma0(1.0, spec.potential)
