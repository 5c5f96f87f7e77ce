"""Independent checks of the quadrature covariance.

* :func:`classical_covariance` - with the flat high-temperature noise
  spectrum every integrand is a rational function of w, integrated exactly
  by residues in the upper half plane.
* :func:`mc_covariance` - time-domain Langevin simulation driven by noise
  synthesised on a frequency grid, second moments from trajectory and time
  averages.

Per-trajectory seeds
--------------------
Trajectory ``i`` of a run with 64-bit ``seed`` draws its noise phases from
``numpy.random.Generator(PCG64(splitmix64(seed ^ i)))`` where

    z = (x + 0x9E3779B97F4A7C15) mod 2**64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    splitmix64(x) = z ^ (z >> 31)

so any trajectory can be regenerated on its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial import Polynomial
from scipy.linalg import expm

from .covariance import ELEMENTS, CovarianceMatrix, SteadyStateProblem, steady_covariance
from .model import BathParams, SystemParams, hadamard_kernel
from .quadrature import QuadratureConfig

__all__ = [
    "ClassicalLimitResult",
    "DegeneratePoleError",
    "UnstablePoleError",
    "classical_covariance",
    "equipartition_covariance",
    "normalized_discrepancy",
    "classical_quadrature_check",
    "McConfig",
    "McResult",
    "SimulationDiverged",
    "splitmix64",
    "trajectory_seed",
    "noise_grid",
    "synthesize_noise",
    "mc_covariance",
]

_MASK = (1 << 64) - 1


class DegeneratePoleError(ArithmeticError):
    pass


class UnstablePoleError(ArithmeticError):
    pass


class SimulationDiverged(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# classical limit by residues
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassicalLimitResult:
    covariance: CovarianceMatrix
    pole_residues: dict
    max_imag_ratio: float


def _conj(p: Polynomial) -> Polynomial:
    # p*(w) := conj(p(conj w)); equals conj(p(w)) on the real axis
    return Polynomial(np.conj(p.coef))


def equipartition_covariance(sys: SystemParams, beta: float) -> CovarianceMatrix:
    """Classical Gibbs state at common inverse temperature ``beta``."""
    m = sys.m
    det = sys.omega_plus ** 2 * sys.omega_minus ** 2
    return CovarianceMatrix(
        v11=sys.omega ** 2 / (m * beta * det),
        v22=m / beta,
        v33=sys.omega ** 2 / (m * beta * det),
        v44=m / beta,
        v13=-sys.sigma / (m * beta * det),
        v14=0.0,
        v24=0.0,
    )


def classical_covariance(sys: SystemParams, bath1: BathParams, bath2: BathParams,
                         degenerate_tol: float = 1e-6) -> ClassicalLimitResult:
    """Steady covariance for flat noise spectra 4 m gamma_a / beta_a, exactly.

    Each element is (1/2pi) int_R P(w) / (Q(w) Q*(w)) dw, where Q = det of
    the inverse response matrix.  Q's zeros lie in the lower half plane, so
    closing upward picks up the simple zeros of Q* only.
    """
    m = sys.m
    g1, g2 = bath1.gamma, bath2.gamma
    if not g1 + g2 > 0:
        raise UnstablePoleError("need gamma1 + gamma2 > 0")
    f1 = 4.0 * m * g1 / bath1.beta
    f2 = 4.0 * m * g2 / bath2.beta

    om2 = sys.omega ** 2
    a1 = Polynomial([om2, -2j * g1, -1.0])
    a2 = Polynomial([om2, -2j * g2, -1.0])
    q = a1 * a2 - sys.sigma ** 2
    qc = _conj(q)
    n11, n22 = a2, a1
    n12 = Polynomial([-sys.sigma + 0j])
    w = Polynomial([0.0, 1.0])

    x1 = f1 * n11 * _conj(n11) + f2 * n12 * _conj(n12)
    x2 = f1 * n12 * _conj(n12) + f2 * n22 * _conj(n22)
    cross = f1 * _conj(n11) * n12 + f2 * _conj(n12) * n22
    numerators = {
        "v11": x1 / m ** 2,
        "v22": w * w * x1,
        "v33": x2 / m ** 2,
        "v44": w * w * x2,
        "v13": cross / m ** 2,
        "v14": (-1j / m) * w * cross,
        "v24": w * w * cross,
    }

    # companion-matrix roots of the quartic
    poles = np.roots(qc.coef[::-1])
    if np.any(poles.imag <= 0):
        raise UnstablePoleError(f"response poles not strictly damped: {poles}")
    # a double root splits by ~sqrt(eps) in the companion-matrix solve
    scale = max(1.0, float(np.max(np.abs(poles))))
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if abs(poles[i] - poles[j]) < degenerate_tol * scale:
                raise DegeneratePoleError(f"near-degenerate poles {poles[i]}, {poles[j]}")

    dqc = qc.deriv()
    qv = q(poles)
    dv = dqc(poles)
    vals = {}
    diag = {}
    worst = 0.0
    for k in ELEMENTS:
        res = numerators[k](poles) / (qv * dv)
        # int_R dw/2pi = (2 pi i / 2 pi) sum of residues
        total = 1j * np.sum(res)
        vals[k] = float(total.real)
        diag[k] = [(complex(p), complex(r)) for p, r in zip(poles, res)]
        # realness relative to the size of the residue sum, not of the
        # element itself (v14, v24 may vanish by symmetry)
        mag = max(abs(total.real), float(np.sum(np.abs(res))))
        if mag > 0:
            worst = max(worst, abs(total.imag) / mag)
    return ClassicalLimitResult(CovarianceMatrix(**vals), diag, worst)


def normalized_discrepancy(a: CovarianceMatrix, b: CovarianceMatrix) -> dict[str, float]:
    """Per-element |a - b|, diagonal entries relative to |a|, off-diagonal
    entries relative to sqrt(a_ii a_jj) (they may vanish by symmetry)."""
    diag = {"v11": a.v11, "v22": a.v22, "v33": a.v33, "v44": a.v44}
    pairs = {"v13": ("v11", "v33"), "v14": ("v11", "v44"), "v24": ("v22", "v44")}
    out = {}
    for k in ELEMENTS:
        d = abs(getattr(a, k) - getattr(b, k))
        if k in diag:
            scale = abs(diag[k])
        else:
            i, j = pairs[k]
            scale = math.sqrt(abs(diag[i] * diag[j]))
        out[k] = d / scale if scale > 0 else d
    return out


def classical_quadrature_check(sys: SystemParams, bath1: BathParams, bath2: BathParams,
                               cutoff: float = 1e6, rel_tol: float = 1e-11,
                               abs_tol: float = 1e-12) -> dict[str, float]:
    """Residue result against half-line quadrature of the flat-kernel integrand.

    The quadrature stops at ``cutoff``; the analytic 1/w^2 tails of v22 and
    v44, 4 m gamma_a / (pi beta_a cutoff), are added back before comparing.
    """
    exact = classical_covariance(sys, bath1, bath2).covariance
    quad = steady_covariance(
        SteadyStateProblem(sys, bath1, bath2,
                           QuadratureConfig(cutoff=cutoff, rel_tol=rel_tol, abs_tol=abs_tol)),
        kernel="classical",
    )
    m = sys.m
    t1 = 4 * m * bath1.gamma / (math.pi * bath1.beta * cutoff)
    t2 = 4 * m * bath2.gamma / (math.pi * bath2.beta * cutoff)
    quad = replace(quad, v22=quad.v22 + t1, v44=quad.v44 + t2)
    return normalized_discrepancy(exact, quad)


# --------------------------------------------------------------------------
# Monte Carlo Langevin simulation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class McConfig:
    """Langevin simulation settings.

    The noise frequency grid is w_k = k * omega_max / n_modes, k = 1..n_modes,
    so the synthesised noise is periodic with period 2 pi n_modes / omega_max;
    ``t_end`` must not exceed it.  The actual step is the largest
    period / 2**j not above ``dt``.  ``spectrum="classical"`` swaps the
    quantum noise spectrum for its flat high-temperature limit.
    """

    dt: float = 0.005
    t_end: float = 200.0
    t_burn: float = 40.0
    n_traj: int = 2000
    seed: int = 0
    n_modes: int = 8192
    omega_max: float = 100.0
    batch: int = 250
    spectrum: str = "quantum"

    def validate(self, sys: SystemParams, g1: float, g2: float):
        wp = sys.omega_plus
        if not self.dt * wp < 0.1:
            raise ValueError(f"dt * Omega_+ = {self.dt * wp:.3g} must be < 0.1")
        if not self.t_burn >= 10.0 / (g1 + g2):
            raise ValueError(f"t_burn must be >= 10/(g1+g2) = {10 / (g1 + g2):.4g}")
        if not self.omega_max >= 10 * wp:
            raise ValueError(f"omega_max must be >= 10 Omega_+ = {10 * wp:.4g}")
        if not self.t_end > self.t_burn:
            raise ValueError("t_end must exceed t_burn")
        if self.t_end > 2 * math.pi * self.n_modes / self.omega_max:
            raise ValueError("t_end exceeds the noise period 2 pi n_modes / omega_max")
        if self.n_traj < 2:
            raise ValueError("need at least two trajectories")
        if self.spectrum not in ("quantum", "classical"):
            raise ValueError("spectrum must be 'quantum' or 'classical'")
        if not 0 <= self.seed <= _MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class McResult:
    covariance: CovarianceMatrix
    stderr: CovarianceMatrix
    dt: float
    n_steps: int


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def trajectory_seed(seed: int, index: int) -> int:
    return splitmix64((seed ^ index) & _MASK)


def noise_grid(cfg: McConfig):
    """(frequencies, spacing, period, fft length, time step) of the synthesis."""
    dw = cfg.omega_max / cfg.n_modes
    period = 2 * math.pi / dw
    nfft = 1 << max(1, math.ceil(math.log2(period / cfg.dt)))
    while nfft < 2 * cfg.n_modes + 2:
        nfft *= 2
    freqs = dw * np.arange(1, cfg.n_modes + 1)
    return freqs, dw, period, nfft, period / nfft


def _amplitudes(bath: BathParams, m: float, cfg: McConfig, freqs, dw):
    if cfg.spectrum == "classical":
        spec = np.full_like(freqs, 4.0 * m * bath.gamma / bath.beta)
    else:
        spec = hadamard_kernel(freqs, bath, m)
    s = spec / (2 * math.pi)
    # cosine amplitude: variance A^2/2 = S(w_k) dw from each of +/- w_k
    return np.sqrt(4.0 * s * dw)


def synthesize_noise(bath: BathParams, m: float, cfg: McConfig, phases: np.ndarray, n_steps: int):
    """Noise samples sum_k A_k cos(w_k t_n + phi_k) for each row of ``phases``.

    ``phases`` has shape (n, n_modes); returns shape (n, n_steps).
    """
    freqs, dw, _, nfft, _ = noise_grid(cfg)
    amp = _amplitudes(bath, m, cfg, freqs, dw)
    coef = np.zeros((phases.shape[0], nfft // 2 + 1), dtype=complex)
    coef[:, 1:cfg.n_modes + 1] = amp * np.exp(1j * phases)
    series = np.fft.irfft(coef, n=nfft, axis=1) * (nfft / 2.0)
    return series[:, :n_steps]


def _propagators(sys: SystemParams, g1: float, g2: float, h: float):
    # exact one-step map for noise varying linearly across the step
    om2, sg, m = sys.omega ** 2, sys.sigma, sys.m
    a = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-om2, -2 * g1, -sg, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-sg, 0.0, -om2, -2 * g2],
    ])
    b = np.array([[0.0, 0.0], [1.0 / m, 0.0], [0.0, 0.0], [0.0, 1.0 / m]])
    big = np.zeros((8, 8))
    big[:4, :4] = a
    big[:4, 4:6] = b
    big[4:6, 6:8] = np.eye(2)
    e = expm(big * h)
    phi, ga, gb = e[:4, :4], e[:4, 4:6], e[:4, 6:8]
    return phi, ga - gb / h, gb / h


def mc_covariance(sys: SystemParams, bath1: BathParams, bath2: BathParams, cfg: McConfig) -> McResult:
    """Covariance elements and standard errors from Langevin trajectories.

    Trajectories start at rest; samples after ``t_burn`` are time-averaged
    per trajectory, then averaged over trajectories.  Standard errors are
    delete-one jackknife estimates over trajectories.  Output is a
    deterministic function of (parameters, cfg) including ``cfg.seed``.
    """
    g1, g2 = bath1.gamma, bath2.gamma
    cfg.validate(sys, g1, g2)
    m = sys.m
    freqs, dw, period, nfft, h = noise_grid(cfg)
    n_steps = int(math.ceil(cfg.t_end / h)) + 1
    n_burn = int(math.ceil(cfg.t_burn / h))
    phi, g0, g1m = _propagators(sys, g1, g2, h)

    per_traj = np.empty((cfg.n_traj, 7))
    for start in range(0, cfg.n_traj, cfg.batch):
        idx = range(start, min(start + cfg.batch, cfg.n_traj))
        nb = len(idx)
        phases = np.empty((2, nb, cfg.n_modes))
        for j, i in enumerate(idx):
            rng = np.random.Generator(np.random.PCG64(trajectory_seed(cfg.seed, i)))
            phases[:, j, :] = rng.uniform(0.0, 2 * math.pi, size=(2, cfg.n_modes))
        noise = np.stack([
            synthesize_noise(bath1, m, cfg, phases[0], n_steps),
            synthesize_noise(bath2, m, cfg, phases[1], n_steps),
        ])  # (2, nb, n_steps)
        y = np.zeros((4, nb))
        acc = np.zeros((7, nb))
        u_prev = noise[:, :, 0]
        for n in range(1, n_steps):
            u_next = noise[:, :, n]
            y = phi @ y + g0 @ u_prev + g1m @ u_next
            u_prev = u_next
            if n > n_burn:
                x1, v1, x2, v2 = y
                acc[0] += x1 * x1
                acc[1] += v1 * v1
                acc[2] += x2 * x2
                acc[3] += v2 * v2
                acc[4] += x1 * x2
                acc[5] += x1 * v2
                acc[6] += v1 * v2
        if not np.all(np.isfinite(acc)):
            raise SimulationDiverged("trajectory diverged; reduce dt")
        navg = n_steps - 1 - n_burn
        acc /= navg
        acc[[1, 3, 6]] *= m * m
        acc[5] *= m
        per_traj[start:start + nb] = acc.T

    mean = per_traj.mean(axis=0)
    n = cfg.n_traj
    loo = (mean * n - per_traj) / (n - 1)
    se = np.sqrt((n - 1) / n * np.sum((loo - loo.mean(axis=0)) ** 2, axis=0))
    return McResult(CovarianceMatrix.from_vector(mean), CovarianceMatrix.from_vector(se), h, n_steps)
