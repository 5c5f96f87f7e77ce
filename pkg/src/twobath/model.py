"""Parameter types and frequency-domain kernels for two coupled oscillators.

Units: hbar = k_B = 1 and frequencies are measured in a reference scale
Omega_0 = 1.  Temperatures carry units of frequency, inverse temperatures
units of inverse frequency.

The oscillators obey

    x1'' + 2 g1 x1' + Omega^2 x1 + sigma x2 = eta1 / m
    x2'' + 2 g2 x2' + Omega^2 x2 + sigma x1 = eta2 / m

with Fourier convention x(t) = int dw/2pi x(w) exp(-i w t), so the response
matrix is D(w) = [-w^2 I + Omega^2 - 2 i w Gamma]^-1.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelError",
    "SingularResponseError",
    "WeakDampingWarning",
    "SystemParams",
    "BathParams",
    "SpectralMatrix",
    "NormalModes",
    "normal_modes",
    "complex_mode_frequencies",
    "dmatrix",
    "response_arrays",
    "hadamard_kernel",
]

# below |w beta / 2| = this, w coth(w beta/2) is evaluated by its Taylor series
COTH_SERIES_CUTOFF = 1e-6
_EPS = np.finfo(float).eps


class ModelError(ValueError):
    """Invalid physical parameters (outside the underdamped regime)."""


class SingularResponseError(ZeroDivisionError):
    """The response matrix has a pole on the real frequency axis."""


class WeakDampingWarning(UserWarning):
    """Effective damping is not small compared with the lower normal mode."""


@dataclass(frozen=True)
class SystemParams:
    """Mass, bare frequency and bilinear coupling of the oscillator pair."""

    omega: float
    sigma: float
    m: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and math.isfinite(self.m)):
            raise ModelError(f"mass must be positive, got m={self.m}")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ModelError(f"omega must be positive, got {self.omega}")
        if not math.isfinite(self.sigma) or self.omega ** 2 <= abs(self.sigma):
            raise ModelError(
                f"need omega^2 > |sigma| (underdamped, nondegenerate); "
                f"got omega^2={self.omega ** 2}, sigma={self.sigma}"
            )

    @property
    def omega_plus(self) -> float:
        return math.sqrt(self.omega ** 2 + self.sigma)

    @property
    def omega_minus(self) -> float:
        return math.sqrt(self.omega ** 2 - self.sigma)


@dataclass(frozen=True)
class BathParams:
    """One heat bath.

    The effective damping is ``gamma_bar * T**alpha`` with ``T = 1/beta``;
    ``alpha = 0`` gives a temperature-independent damping ``gamma_bar``.
    """

    gamma_bar: float
    beta: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (self.gamma_bar >= 0 and math.isfinite(self.gamma_bar)):
            raise ModelError(f"gamma_bar must be >= 0, got {self.gamma_bar}")
        if not self.alpha >= 0:
            raise ModelError(f"alpha must be >= 0, got {self.alpha}")
        if not self.beta > 0:
            raise ModelError(f"beta must be > 0, got {self.beta}")

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta

    @property
    def gamma(self) -> float:
        """Effective damping at this bath's own temperature."""
        if self.alpha == 0:
            return self.gamma_bar
        return self.gamma_bar * self.beta ** (-self.alpha)

    def with_beta(self, beta: float) -> "BathParams":
        return BathParams(self.gamma_bar, beta, self.alpha)

    def check_weak_damping(self, sys: SystemParams) -> bool:
        """Warn (never raise) when gamma(T) >= Omega_-; return validity."""
        ok = self.gamma < sys.omega_minus
        if not ok:
            warnings.warn(
                f"damping {self.gamma:.4g} not small against Omega_- = "
                f"{sys.omega_minus:.4g}; weak-damping picture is questionable",
                WeakDampingWarning,
                stacklevel=2,
            )
        return ok


@dataclass(frozen=True)
class SpectralMatrix:
    """Value of the 2x2 complex symmetric response matrix at one frequency."""

    d11: complex
    d12: complex
    d21: complex
    d22: complex

    def as_array(self) -> np.ndarray:
        return np.array([[self.d11, self.d12], [self.d21, self.d22]])


@dataclass(frozen=True)
class NormalModes:
    omega_plus: float
    omega_minus: float
    halfwidth: float = 0.0


def normal_modes(sys: SystemParams, g1: float = 0.0, g2: float = 0.0) -> NormalModes:
    """Normal-mode frequencies sqrt(Omega^2 +/- sigma) and their halfwidth."""
    if sys.omega ** 2 <= abs(sys.sigma):
        raise ModelError("omega^2 <= |sigma|: no stable normal modes")
    return NormalModes(sys.omega_plus, sys.omega_minus, 0.5 * (g1 + g2))


def complex_mode_frequencies(sys: SystemParams, g1: float, g2: float) -> tuple[complex, complex]:
    """Weak-damping estimate of the two complex mode frequencies.

    Returns the upper-half-plane representatives Omega_+ + i(g1+g2)/2 and
    Omega_- + i(g1+g2)/2.  Only used to place quadrature breakpoints.
    """
    nm = normal_modes(sys, g1, g2)
    if g1 + g2 >= nm.omega_minus:
        warnings.warn(
            "g1 + g2 >= Omega_-: mode-frequency estimate outside weak damping",
            WeakDampingWarning,
            stacklevel=2,
        )
    return complex(nm.omega_plus, nm.halfwidth), complex(nm.omega_minus, nm.halfwidth)


def response_arrays(omega, sys: SystemParams, g1: float, g2: float):
    """Vectorised D(w) entries ``(d11, d12, d22)``; d21 == d12 identically."""
    w = np.asarray(omega, dtype=float)
    base = sys.omega ** 2 - w * w
    a1 = base - 2j * w * g1
    a2 = base - 2j * w * g2
    det = a1 * a2 - sys.sigma ** 2
    inv = 1.0 / det
    return a2 * inv, -sys.sigma * inv, a1 * inv


def dmatrix(omega: float, sys: SystemParams, g1: float, g2: float) -> SpectralMatrix:
    """Response matrix D(w) = [-w^2 I + Omega^2 - 2 i w Gamma]^-1."""
    w = float(omega)
    base = sys.omega ** 2 - w * w
    a1 = complex(base, -2.0 * w * g1)
    a2 = complex(base, -2.0 * w * g2)
    det = a1 * a2 - sys.sigma ** 2
    # undamped: a pole on the real axis, up to rounding of Omega_+/-
    undamped = g1 == 0 and g2 == 0
    if det == 0 or (undamped and abs(det) <= 64 * _EPS * (base * base + sys.sigma ** 2)):
        raise SingularResponseError(f"response matrix singular at w={w}")
    d12 = -sys.sigma / det
    return SpectralMatrix(a2 / det, d12, d12, a1 / det)


def _w_coth(w, beta):
    # w coth(w beta / 2), even in w, finite at w = 0
    w = np.asarray(w, dtype=float)
    x = 0.5 * beta * np.abs(w)
    out = np.empty_like(x)
    small = x < COTH_SERIES_CUTOFF
    if np.any(small):
        ws = w[small]
        out[small] = 2.0 / beta + ws * ws * beta / 6.0
    big = ~small
    if np.any(big):
        xb = x[big]
        # coth(x) = 1 + 2 e^{-2x} / (1 - e^{-2x}), stable for all x > 0
        e = np.exp(-2.0 * xb)
        out[big] = np.abs(w[big]) * (1.0 + 2.0 * e / -np.expm1(-2.0 * xb))
    return out


def hadamard_kernel(omega, bath: BathParams, m: float = 1.0, gamma: float | None = None):
    """Noise spectrum 2 m gamma w coth(w beta / 2) of one bath.

    ``gamma`` overrides the bath's effective damping (callers that already
    evaluated ``bath.gamma`` pass it through).  Scalars in, scalars out.
    """
    g = bath.gamma if gamma is None else gamma
    scalar = np.ndim(omega) == 0
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    if math.isinf(bath.beta):
        val = 2.0 * m * g * np.abs(w)
    else:
        val = 2.0 * m * g * _w_coth(w, bath.beta)
    return float(val[0]) if scalar else val
