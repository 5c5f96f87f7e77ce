import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twobath import (
    BathParams,
    CovarianceMatrix,
    HeisenbergViolation,
    QuadratureConfig,
    SteadyStateProblem,
    SystemParams,
    steady_covariance,
    symplectic_eigenvalues,
)
from twobath.covariance import ELEMENTS, blocks, from_blocks


def test_array_layout_and_roundtrip():
    v = CovarianceMatrix(1.0, 2.0, 3.0, 4.0, 0.5, 0.25, 0.125)
    a = v.as_array()
    assert np.array_equal(a, a.T)
    # (x1, p1, x2, p2) ordering; <x1 p1> and <x2 p2> vanish in the steady state
    assert a[0, 1] == 0 and a[2, 3] == 0
    assert a[1, 2] == -v.v14 and a[0, 3] == v.v14
    assert CovarianceMatrix.from_array(a) == v
    assert CovarianceMatrix.from_vector(v.as_vector()) == v
    assert np.array_equal(from_blocks(*blocks(v)), a)
    assert v.det_c == pytest.approx(0.5 * 0.125 + 0.25 ** 2)


def test_swap_is_an_involution():
    v = CovarianceMatrix(1.0, 2.0, 3.0, 4.0, 0.5, 0.25, 0.125)
    assert v.swapped().swapped() == v
    assert v.swapped().v11 == 3.0 and v.swapped().v14 == -0.25


def test_ground_state_limit(sys_ref):
    # vanishing damping at zero temperature: uncoupled normal-mode vacua
    wp, wm = sys_ref.omega_plus, sys_ref.omega_minus
    b = BathParams(1e-5, math.inf)
    v = steady_covariance(SteadyStateProblem(sys_ref, b, b, QuadratureConfig(cutoff=100.0)))
    expected = dict(
        v11=0.25 * (1 / wp + 1 / wm), v33=0.25 * (1 / wp + 1 / wm),
        v13=0.25 * (1 / wp - 1 / wm), v22=0.25 * (wp + wm), v44=0.25 * (wp + wm),
        v24=0.25 * (wp - wm),
    )
    for k, x in expected.items():
        assert getattr(v, k) == pytest.approx(x, rel=1e-4), k
    assert abs(v.v14) < 1e-12
    assert symplectic_eigenvalues(v)[0] == pytest.approx(0.5, abs=1e-4)


def test_high_temperature_equipartition(sys_ref):
    beta = 0.005
    b1, b2 = BathParams(0.1, beta), BathParams(0.3, beta)
    v = steady_covariance(SteadyStateProblem(sys_ref, b1, b2, QuadratureConfig(cutoff=5000.0)))
    det = 49.0
    assert v.v11 == pytest.approx(25 / (beta * det), rel=2e-3)
    assert v.v13 == pytest.approx(-24 / (beta * det), rel=2e-3)
    assert v.v22 == pytest.approx(1 / beta, rel=2e-3)
    assert abs(v.v24) < 2e-3 / beta


def test_equal_temperatures_carry_no_heat_current(sys_ref):
    v = steady_covariance(SteadyStateProblem(sys_ref, BathParams(0.1, 0.3), BathParams(0.2, 0.3)))
    assert abs(v.v14) < 1e-12 * math.sqrt(v.v11 * v.v44)


@pytest.mark.parametrize("sigma", [24.0, -24.0])
def test_heat_current_sign_follows_coupling(sigma):
    s = SystemParams(5.0, sigma)
    v = steady_covariance(SteadyStateProblem(s, BathParams(0.005, 0.05), BathParams(0.25, 2.0)))
    # bath 1 hotter: <x1 p2> has the sign of -sigma
    assert np.sign(v.v14) == -np.sign(sigma)


def test_swap_symmetry_of_solution(sys_ref, hot_weak, cold_strong, quad_ref):
    p = SteadyStateProblem(sys_ref, hot_weak, cold_strong, quad_ref)
    a = steady_covariance(p).as_vector()
    b = steady_covariance(p.swapped()).swapped().as_vector()
    assert np.allclose(a, b, rtol=2 * quad_ref.rel_tol, atol=0)


def test_truncated_momentum_spectrum_violates_uncertainty(sys_ref, hot_weak, cold_strong):
    p = SteadyStateProblem(sys_ref, hot_weak, cold_strong, QuadratureConfig(cutoff=20.0))
    with pytest.raises(HeisenbergViolation):
        steady_covariance(p)
    v = steady_covariance(p, check=False)
    assert symplectic_eigenvalues(v)[0] < 0.5


def test_cutoff_log_growth_per_bath(sys_ref, hot_weak, cold_strong):
    v = [steady_covariance(SteadyStateProblem(sys_ref, hot_weak, cold_strong, QuadratureConfig(cutoff=c)))
         for c in (5000.0, 10000.0)]
    ln2 = math.log(2)
    assert v[1].v22 - v[0].v22 == pytest.approx(2 * 0.005 / math.pi * ln2, rel=1e-4)
    assert v[1].v44 - v[0].v44 == pytest.approx(2 * 0.25 / math.pi * ln2, rel=1e-4)
    for k in ("v11", "v33", "v13", "v14"):
        assert getattr(v[1], k) == pytest.approx(getattr(v[0], k), rel=1e-7, abs=1e-12)


def test_unknown_kernel(sys_ref, hot_weak, cold_strong):
    with pytest.raises(ValueError):
        steady_covariance(SteadyStateProblem(sys_ref, hot_weak, cold_strong), kernel="ohmic")


@settings(max_examples=25, deadline=None)
@given(
    omega=st.floats(1.0, 6.0),
    ratio=st.floats(-0.9, 0.9),
    g1=st.floats(0.001, 0.3),
    g2=st.floats(0.001, 0.3),
    lb1=st.floats(-2, 1.5),
    lb2=st.floats(-2, 1.5),
)
def test_uncertainty_principle_holds(omega, ratio, g1, g2, lb1, lb2):
    s = SystemParams(omega, ratio * omega ** 2)
    # keep the damping weak against the lower normal mode
    cap = 0.2 * s.omega_minus
    p = SteadyStateProblem(s, BathParams(min(g1, cap), 10 ** lb1), BathParams(min(g2, cap), 10 ** lb2))
    v = steady_covariance(p)
    assert symplectic_eigenvalues(v)[0] >= 0.5 - 1e-9
