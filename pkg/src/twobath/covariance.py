"""Steady-state covariance matrix of the two damped, noise-driven oscillators.

Phase-space ordering is X = (x1, p1, x2, p2).  In the steady state the
position-momentum correlations of one oscillator vanish, leaving seven
independent second moments; they are frequency integrals of the response
matrix D(w) weighted by the two baths' noise spectra.  Using D(-w) =
conj(D(w)) and even noise spectra, every two-sided integral folds to a real
half-line integral over [0, cutoff].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .model import BathParams, SystemParams, hadamard_kernel, response_arrays
from .quadrature import QuadratureConfig, integrate_halfline

__all__ = [
    "ELEMENTS",
    "CovarianceMatrix",
    "SteadyStateProblem",
    "HeisenbergViolation",
    "steady_covariance",
    "blocks",
    "from_blocks",
    "quadrature_peaks",
    "HEISENBERG_TOL",
]

ELEMENTS = ("v11", "v22", "v33", "v44", "v13", "v14", "v24")

# eta_< below 1/2 by more than this means the integrals are wrong, not physics
HEISENBERG_TOL = 1e-6


class HeisenbergViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class CovarianceMatrix:
    v11: float
    v22: float
    v33: float
    v44: float
    v13: float
    v14: float
    v24: float

    @classmethod
    def from_array(cls, v) -> "CovarianceMatrix":
        """Read the seven independent elements from a 4x4 array (no checks)."""
        v = np.asarray(v, dtype=float)
        return cls(v[0, 0], v[1, 1], v[2, 2], v[3, 3], v[0, 2], v[0, 3], v[1, 3])

    @classmethod
    def from_vector(cls, x) -> "CovarianceMatrix":
        return cls(*(float(t) for t in x))

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, k) for k in ELEMENTS])

    def as_array(self) -> np.ndarray:
        """Full 4x4 matrix with the structural zeros and V23 = -V14."""
        return np.array([
            [self.v11, 0.0, self.v13, self.v14],
            [0.0, self.v22, -self.v14, self.v24],
            [self.v13, -self.v14, self.v33, 0.0],
            [self.v14, self.v24, 0.0, self.v44],
        ])

    @property
    def det_c(self) -> float:
        return self.v13 * self.v24 + self.v14 ** 2

    def swapped(self) -> "CovarianceMatrix":
        """Relabel oscillator 1 <-> 2 (V14 flips sign since V14 = -V23)."""
        return CovarianceMatrix(self.v33, self.v44, self.v11, self.v22, self.v13, -self.v14, self.v24)


def blocks(v: CovarianceMatrix):
    """Return the 2x2 blocks (A, B, C) of V = [[A, C], [C^T, B]]."""
    a = np.diag([v.v11, v.v22])
    b = np.diag([v.v33, v.v44])
    c = np.array([[v.v13, v.v14], [-v.v14, v.v24]])
    return a, b, c


def from_blocks(a, b, c) -> np.ndarray:
    return np.block([[np.asarray(a), np.asarray(c)], [np.asarray(c).T, np.asarray(b)]])


@dataclass(frozen=True)
class SteadyStateProblem:
    sys: SystemParams
    bath1: BathParams
    bath2: BathParams
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def swapped(self) -> "SteadyStateProblem":
        return replace(self, bath1=self.bath2, bath2=self.bath1)


def quadrature_peaks(sys: SystemParams, g1: float, g2: float, beta1: float, beta2: float):
    """Resonances at Omega_+/- (halfwidth (g1+g2)/2) plus the thermal knees at 0."""
    hw = 0.5 * (g1 + g2)
    peaks = [(sys.omega_plus, hw), (sys.omega_minus, hw)]
    for beta in (beta1, beta2):
        if math.isfinite(beta):
            peaks.append((0.0, 1.0 / beta))
    return peaks


def spectral_integrand(sys: SystemParams, g1: float, g2: float,
                       k1: Callable[[np.ndarray], np.ndarray],
                       k2: Callable[[np.ndarray], np.ndarray]):
    """Vector integrand (7, n) on the half line, prefactors included.

    ``k1``/``k2`` are the noise spectra of the two baths as functions of w.
    """
    m = sys.m
    c_x = 1.0 / (math.pi * m * m)
    c_p = 1.0 / math.pi
    c_xp = 1.0 / (math.pi * m)

    def f(w):
        d11, d12, d22 = response_arrays(w, sys, g1, g2)
        s1 = k1(w)
        s2 = k2(w)
        a11 = d11.real ** 2 + d11.imag ** 2
        a12 = d12.real ** 2 + d12.imag ** 2
        a22 = d22.real ** 2 + d22.imag ** 2
        x1 = a11 * s1 + a12 * s2
        x2 = a12 * s1 + a22 * s2
        # D11* D21 K1 + D12* D22 K2 with D21 = D12
        cross = np.conj(d11) * d12 * s1 + np.conj(d12) * d22 * s2
        w2 = w * w
        return np.stack([
            c_x * x1,
            c_p * w2 * x1,
            c_x * x2,
            c_p * w2 * x2,
            c_x * cross.real,
            c_xp * w * cross.imag,
            c_p * w2 * cross.real,
        ])

    return f


def _heisenberg_check(v: CovarianceMatrix, tol: float = HEISENBERG_TOL):
    from .entanglement import symplectic_eigenvalues

    eta_less, _ = symplectic_eigenvalues(v, partial_transpose=False)
    if not eta_less >= 0.5 - tol:
        raise HeisenbergViolation(
            f"symplectic eigenvalue {eta_less:.12g} < 1/2: quadrature failure"
        )


def steady_covariance(p: SteadyStateProblem, kernel: str = "quantum", check: bool = True) -> CovarianceMatrix:
    """Late-time covariance matrix by quadrature of the spectral integrals.

    ``kernel="classical"`` replaces w coth(w beta/2) by its flat high-T
    limit 2/beta (used to compare against the closed-form oracle); the
    Heisenberg check is skipped in that case since a classical state need
    not satisfy it.
    """
    sys = p.sys
    g1, g2 = p.bath1.gamma, p.bath2.gamma
    if kernel == "quantum":
        def k1(w):
            return hadamard_kernel(w, p.bath1, sys.m, gamma=g1)

        def k2(w):
            return hadamard_kernel(w, p.bath2, sys.m, gamma=g2)
    elif kernel == "classical":
        f1 = 4.0 * sys.m * g1 / p.bath1.beta
        f2 = 4.0 * sys.m * g2 / p.bath2.beta

        def k1(w):
            return np.full_like(w, f1)

        def k2(w):
            return np.full_like(w, f2)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")

    f = spectral_integrand(sys, g1, g2, k1, k2)
    peaks = quadrature_peaks(sys, g1, g2, p.bath1.beta, p.bath2.beta)
    res = integrate_halfline(f, peaks, p.quad)
    v = CovarianceMatrix.from_vector(res.value)
    if check and kernel == "quantum":
        _heisenberg_check(v)
    return v
