import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twobath import BathParams, SystemParams
from twobath.oracle import (
    DegeneratePoleError,
    McConfig,
    UnstablePoleError,
    classical_covariance,
    classical_quadrature_check,
    equipartition_covariance,
    mc_covariance,
    noise_grid,
    normalized_discrepancy,
    splitmix64,
    synthesize_noise,
    trajectory_seed,
)
from twobath.covariance import ELEMENTS

SMALL = SystemParams(1.5, 1.0)
HOT1, HOT2 = BathParams(0.1, 0.05), BathParams(0.2, 0.1)
CHEAP = McConfig(dt=0.02, t_end=80.0, t_burn=35.0, n_traj=40, n_modes=512, omega_max=20.0,
                 batch=20, spectrum="classical")


def test_splitmix_reference_values():
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert trajectory_seed(5, 3) == splitmix64(5 ^ 3)
    assert 0 <= splitmix64(2 ** 64 - 1) < 2 ** 64


def test_equipartition_reproduced(sys_ref):
    r = classical_covariance(sys_ref, BathParams(0.005, 0.3), BathParams(0.25, 0.3))
    d = normalized_discrepancy(equipartition_covariance(sys_ref, 0.3), r.covariance)
    assert max(d.values()) < 1e-12
    assert r.max_imag_ratio < 1e-12


@settings(max_examples=15, deadline=None)
@given(
    ratio=st.floats(0.05, 0.95),
    g1=st.floats(0.005, 0.3),
    g2=st.floats(0.005, 0.3),
    lb1=st.floats(-2, 0.5),
    lb2=st.floats(-2, 0.5),
)
def test_residues_match_flat_kernel_quadrature(ratio, g1, g2, lb1, lb2):
    s = SystemParams(3.0, ratio * 9.0)
    assume_ok = abs(g1 - g2) > 1e-3
    if not assume_ok:
        g2 = g1 + 0.01
    d = classical_quadrature_check(s, BathParams(g1, 10 ** lb1), BathParams(g2, 10 ** lb2))
    assert max(d.values()) < 1e-8


def test_pole_errors():
    with pytest.raises(UnstablePoleError):
        classical_covariance(SMALL, BathParams(0.0, 1.0), BathParams(0.0, 1.0))
    # uncoupled identical oscillators have double poles
    with pytest.raises(DegeneratePoleError):
        classical_covariance(SystemParams(1.5, 0.0), BathParams(0.1, 1.0), BathParams(0.1, 1.0))


def test_noise_power_matches_spectrum():
    cfg = McConfig(dt=0.02, t_end=150.0, t_burn=35.0, n_traj=2, n_modes=512, omega_max=20.0)
    freqs, dw, period, nfft, h = noise_grid(cfg)
    assert period == pytest.approx(2 * math.pi * 512 / 20.0)
    assert h <= cfg.dt and period / h == nfft
    rng = np.random.default_rng(1)
    phases = rng.uniform(0, 2 * math.pi, size=(200, cfg.n_modes))
    n = synthesize_noise(HOT1, SMALL.m, cfg, phases, 2000)
    from twobath.model import hadamard_kernel
    # each cosine carries half its squared amplitude 4 S dw, S = K / 2 pi
    expected = float(np.sum(2 * hadamard_kernel(freqs, HOT1) / (2 * math.pi) * dw))
    assert np.mean(n ** 2) == pytest.approx(expected, rel=0.03)


def test_mc_is_deterministic_and_batch_independent():
    a = mc_covariance(SMALL, HOT1, HOT2, CHEAP)
    b = mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "batch": 7}))
    assert np.array_equal(a.covariance.as_vector(), b.covariance.as_vector())
    c = mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "seed": 1}))
    assert not np.array_equal(a.covariance.as_vector(), c.covariance.as_vector())


def test_mc_agrees_with_residues():
    r = mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "n_traj": 200, "batch": 100}))
    exact = classical_covariance(SMALL, HOT1, HOT2).covariance
    for k in ELEMENTS:
        z = (getattr(r.covariance, k) - getattr(exact, k)) / getattr(r.stderr, k)
        assert abs(z) < 4, (k, z)


def test_mc_stderr_scales_as_inverse_sqrt():
    few = mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "n_traj": 50, "batch": 50}))
    many = mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "n_traj": 400, "batch": 100}))
    ratio = np.median(few.stderr.as_vector() / many.stderr.as_vector())
    assert ratio == pytest.approx(math.sqrt(8), rel=0.2)


def test_mc_config_validation():
    with pytest.raises(ValueError, match="t_burn"):
        mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "t_burn": 5.0, "t_end": 50.0}))
    with pytest.raises(ValueError, match="period"):
        mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "t_end": 500.0}))
    with pytest.raises(ValueError, match="dt"):
        mc_covariance(SMALL, HOT1, HOT2, McConfig(**{**CHEAP.__dict__, "dt": 0.1}))
