import math

import pytest

from twobath import BathParams, QuadratureConfig, SteadyStateProblem, SystemParams, steady_covariance
from twobath.approx import (
    ClosedFormDomainError,
    approx_covariance,
    approx_terms,
    beta1c_closed_form,
    critical_beta_leading,
    regime_report,
)
from twobath.covariance import ELEMENTS

LAM = 5000.0


def test_terms_and_symmetry(sys_ref):
    t = approx_terms(sys_ref, BathParams(0.005, 0.02), BathParams(0.25, 10.0), LAM)
    assert set(t) == set(ELEMENTS)
    assert t["v33"] == []
    assert {n for n, _ in t["v44"]} >= {"uv_hot", "uv_cold", "hot", "cold"}
    v = approx_covariance(sys_ref, BathParams(0.005, 0.02), BathParams(0.25, 10.0), LAM)
    assert v.v33 == v.v11
    assert v.v22 == pytest.approx(math.fsum(x for _, x in t["v22"]))


def test_regime_report(sys_ref):
    r = regime_report(sys_ref, 0.05, 10.0)
    assert r.beta1_omega_plus == pytest.approx(0.35)
    assert r.beta2_omega_minus == pytest.approx(10.0)
    assert r.in_regime
    assert not regime_report(sys_ref, 0.1, 10.0).in_regime
    assert not regime_report(sys_ref, 0.02, 1.5).in_regime


@pytest.mark.parametrize("beta1", [0.005, 0.01, 0.02])
def test_agrees_with_quadrature_in_regime(sys_ref, beta1):
    b1, b2 = BathParams(0.005, beta1), BathParams(0.25, 10.0)
    exact = steady_covariance(SteadyStateProblem(sys_ref, b1, b2, QuadratureConfig(cutoff=LAM)))
    approx = approx_covariance(sys_ref, b1, b2, LAM)
    for k in ELEMENTS:
        assert getattr(approx, k) == pytest.approx(getattr(exact, k), rel=0.15), k


def test_leading_closed_form_value(sys_ref):
    wp, wm, g1, g2 = 7.0, 1.0, 0.005, 0.25
    den = g2 * (math.pi * math.sqrt(5 * wp ** 2 - 2 * wp * wm + wm ** 2)
                - math.pi * (wp + wm) - g2 * math.log(LAM ** 4 / wm ** 4))
    assert beta1c_closed_form(sys_ref, g1, g2, LAM) == pytest.approx(4 * math.pi * g1 / den, rel=1e-14)
    assert beta1c_closed_form(sys_ref, g1, g2, LAM) == pytest.approx(0.0177, rel=2e-3)


def test_closed_forms_linear_in_hot_damping(sys_ref):
    lead = [beta1c_closed_form(sys_ref, g, 0.25, LAM) for g in (1e-4, 2e-4)]
    assert lead[1] / lead[0] == pytest.approx(2.0, rel=1e-14)
    full = [beta1c_closed_form(sys_ref, g, 0.25, LAM, order="full") for g in (1e-6, 2e-6)]
    assert full[1] / full[0] == pytest.approx(2.0, rel=1e-3)
    # the two orders differ by a gamma_1-independent factor, not by O(gamma_1)
    ratio = [beta1c_closed_form(sys_ref, g, 0.25, LAM, order="full") / beta1c_closed_form(sys_ref, g, 0.25, LAM)
             for g in (1e-6, 1e-5)]
    assert ratio[0] == pytest.approx(ratio[1], rel=1e-3)


def test_closed_form_domain(sys_ref):
    with pytest.raises(ClosedFormDomainError):
        beta1c_closed_form(sys_ref, 0.005, 0.25, 1e30)
    with pytest.raises(ValueError):
        beta1c_closed_form(sys_ref, 0.005, 0.25, LAM, order="second")


def test_temperature_dependent_leading_form(sys_ref):
    held = BathParams(0.25, 1.5)
    base = critical_beta_leading(sys_ref, BathParams(0.005, 1.0), held, LAM)
    assert base == pytest.approx(beta1c_closed_form(sys_ref, 0.005, 0.25, LAM))
    for alpha in (0.5, 1.0, 2.0):
        b = critical_beta_leading(sys_ref, BathParams(0.005, 1.0, alpha), held, LAM)
        # self-consistent: the closed form evaluated at gamma(beta_c) returns beta_c
        g = 0.005 * b ** (-alpha)
        assert b == pytest.approx(beta1c_closed_form(sys_ref, g, 0.25, LAM), rel=1e-12)
