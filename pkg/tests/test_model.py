import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twobath.model import (
    BathParams,
    ModelError,
    SingularResponseError,
    SystemParams,
    WeakDampingWarning,
    complex_mode_frequencies,
    dmatrix,
    hadamard_kernel,
    normal_modes,
    response_arrays,
)


def test_normal_mode_frequencies(sys_ref):
    nm = normal_modes(sys_ref, 0.1, 0.3)
    assert nm.omega_plus == pytest.approx(7.0)
    assert nm.omega_minus == pytest.approx(1.0)
    assert nm.halfwidth == pytest.approx(0.2)


@pytest.mark.parametrize("omega,sigma", [(1.0, 1.0), (1.0, -2.0), (2.0, 4.0)])
def test_overcoupled_system_rejected(omega, sigma):
    with pytest.raises(ModelError):
        SystemParams(omega, sigma)


def test_bad_mass_and_bath_rejected():
    with pytest.raises(ModelError):
        SystemParams(2.0, 1.0, m=0.0)
    with pytest.raises(ModelError):
        BathParams(-0.1, 1.0)
    with pytest.raises(ModelError):
        BathParams(0.1, 0.0)
    with pytest.raises(ModelError):
        BathParams(0.1, 1.0, alpha=-1.0)


def test_temperature_dependent_damping():
    b = BathParams(0.2, beta=0.5, alpha=2.0)
    assert b.temperature == 2.0
    assert b.gamma == pytest.approx(0.2 * 4.0)
    assert b.with_beta(2.0).gamma == pytest.approx(0.2 * 0.25)
    assert BathParams(0.2, beta=0.5).gamma == 0.2


def test_weak_damping_warns_but_does_not_raise(sys_ref):
    with pytest.warns(WeakDampingWarning):
        assert not BathParams(2.0, 1.0).check_weak_damping(sys_ref)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert BathParams(0.1, 1.0).check_weak_damping(sys_ref)
    with pytest.warns(WeakDampingWarning):
        complex_mode_frequencies(sys_ref, 0.6, 0.6)


@settings(max_examples=60, deadline=None)
@given(w=st.floats(-50, 50), g1=st.floats(0.001, 0.5), g2=st.floats(0.001, 0.5))
def test_dmatrix_inverts_equation_of_motion(w, g1, g2):
    s = SystemParams(5.0, 24.0)
    d = dmatrix(w, s, g1, g2).as_array()
    inv = np.array([[-w * w + 25 - 2j * w * g1, 24], [24, -w * w + 25 - 2j * w * g2]])
    assert np.allclose(d @ inv, np.eye(2), atol=1e-9)
    assert d[0, 1] == d[1, 0]
    # vectorised form agrees
    a, b, c = response_arrays(np.array([w]), s, g1, g2)
    assert np.allclose([a[0], b[0], c[0]], [d[0, 0], d[0, 1], d[1, 1]], rtol=1e-12)


def test_dmatrix_conjugate_symmetry(sys_ref):
    d = dmatrix(3.3, sys_ref, 0.1, 0.2).as_array()
    dm = dmatrix(-3.3, sys_ref, 0.1, 0.2).as_array()
    assert np.allclose(dm, d.conj(), rtol=1e-14)


def test_undamped_resonance_is_singular(sys_ref):
    with pytest.raises(SingularResponseError):
        dmatrix(sys_ref.omega_plus, sys_ref, 0.0, 0.0)
    with pytest.raises(SingularResponseError):
        dmatrix(sys_ref.omega_minus, sys_ref, 0.0, 0.0)
    # any damping moves the pole off the axis
    dmatrix(sys_ref.omega_plus, sys_ref, 1e-3, 0.0)


def test_kernel_limits():
    b = BathParams(0.1, beta=2.0)
    # classical plateau 4 m gamma / beta at w -> 0
    assert hadamard_kernel(0.0, b) == pytest.approx(4 * 0.1 / 2.0, rel=1e-15)
    # vacuum slope 2 m gamma |w| at large w
    assert hadamard_kernel(200.0, b) == pytest.approx(2 * 0.1 * 200.0, rel=1e-14)
    assert hadamard_kernel(-3.0, b) == hadamard_kernel(3.0, b)
    assert hadamard_kernel(3.0, b, m=2.0) == pytest.approx(2 * hadamard_kernel(3.0, b))
    cold = BathParams(0.1, beta=math.inf)
    assert hadamard_kernel(-3.0, cold) == pytest.approx(0.6)
    assert hadamard_kernel(0.0, cold) == 0.0


def test_kernel_continuous_across_series_switch():
    b = BathParams(1.0, beta=1.0)
    w = np.array([2e-6 * (1 - 1e-9), 2e-6 * (1 + 1e-9)])
    k = hadamard_kernel(w, b)
    assert abs(k[0] - k[1]) < 1e-12 * k[0]
    exact = 2 * w / np.tanh(w / 2)
    assert np.allclose(k, exact, rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(w=st.floats(1e-8, 1e3), beta=st.floats(1e-3, 1e3))
def test_kernel_matches_coth(w, beta):
    b = BathParams(0.3, beta)
    x = w * beta / 2
    expected = 2 * 0.3 * w * math.cosh(x) / math.sinh(x) if x < 300 else 2 * 0.3 * w
    assert hadamard_kernel(w, b) == pytest.approx(expected, rel=1e-10)
