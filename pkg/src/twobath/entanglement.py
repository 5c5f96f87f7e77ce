"""Gaussian separability tests and entanglement measures for two modes.

All functions take a :class:`CovarianceMatrix` (or anything with the same
seven fields) and use the block invariants det A, det B, det C, det V.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covariance import CovarianceMatrix, blocks

__all__ = [
    "EntanglementReport",
    "InvalidCovarianceError",
    "simon_invariants",
    "symplectic_eigenvalues",
    "phs_test",
    "measures",
    "negativity",
    "log_negativity",
    "report",
    "J2",
]

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

# discriminant below -DISC_TOL * Delta^2 is rejected, above it clamped to 0
DISC_TOL = 1e-10


class InvalidCovarianceError(ValueError):
    pass


@dataclass(frozen=True)
class EntanglementReport:
    zeta_plus: float
    zeta_minus: float
    eta_less: float
    eta_greater: float
    eta_bar_less: float
    eta_bar_greater: float
    det_c: float
    negativity: float
    log_negativity: float
    entangled: bool


def _dets(v: CovarianceMatrix):
    det_a = v.v11 * v.v22
    det_b = v.v33 * v.v44
    det_c = v.v13 * v.v24 + v.v14 ** 2
    return det_a, det_b, det_c


def simon_invariants(v: CovarianceMatrix) -> tuple[float, float]:
    """(zeta_+, zeta_-); zeta_+ >= 0 iff separable, zeta_- >= 0 is Heisenberg."""
    a, b, c = blocks(v)
    det_a, det_b, det_c = _dets(v)
    j = J2
    tr = np.trace(a @ j @ c @ j @ b @ j @ c.T @ j)
    base = det_a * det_b - tr - 0.25 * (det_a + det_b)
    return base + (det_c + 0.25) ** 2, base + (det_c - 0.25) ** 2


def symplectic_eigenvalues(v: CovarianceMatrix, partial_transpose: bool = False) -> tuple[float, float]:
    """Symplectic eigenvalues (eta_<, eta_>) of V or of its partial transpose."""
    arr = v.as_array()
    try:
        np.linalg.cholesky(arr)
    except np.linalg.LinAlgError:
        raise InvalidCovarianceError("matrix is not positive definite") from None
    det_a, det_b, det_c = _dets(v)
    s = -2.0 if partial_transpose else 2.0
    delta = det_a + det_b + s * det_c
    det_v = float(np.linalg.det(arr))
    disc = 0.25 * delta * delta - det_v
    if disc < 0:
        if disc < -DISC_TOL * delta * delta:
            raise InvalidCovarianceError(
                f"negative discriminant {disc:.3g}: not a valid covariance matrix"
            )
        disc = 0.0
    root = math.sqrt(disc)
    half = 0.5 * delta
    lo2 = half - root
    if lo2 < 0:
        if lo2 < -DISC_TOL * abs(delta):
            raise InvalidCovarianceError("matrix is not positive definite")
        lo2 = 0.0
    return math.sqrt(lo2), math.sqrt(half + root)


def phs_test(v: CovarianceMatrix) -> bool:
    """True when the state is entangled (partial-transpose eta_< below 1/2)."""
    eta_bar_less, _ = symplectic_eigenvalues(v, partial_transpose=True)
    return eta_bar_less < 0.5


def log_negativity(eta_bar_less: float) -> float:
    if eta_bar_less >= 0.5:
        return 0.0
    return -math.log(2.0 * eta_bar_less)


def negativity(eta_bar_less: float, mode: str = "standard") -> float:
    """Negativity from the smallest partial-transpose symplectic eigenvalue.

    ``mode="standard"``: max(0, (1 - 2 eta)/(4 eta)), zero at eta = 1/2.
    ``mode="offset"``: max(0, (1 - eta)/(2 eta)), which stays positive
    (1/2) at the separability threshold.
    """
    if mode == "standard":
        return max(0.0, (1.0 - 2.0 * eta_bar_less) / (4.0 * eta_bar_less))
    if mode == "offset":
        return max(0.0, (1.0 - eta_bar_less) / (2.0 * eta_bar_less))
    raise ValueError(f"unknown negativity mode {mode!r}")


def measures(v: CovarianceMatrix, mode: str = "standard") -> tuple[float, float]:
    """(negativity, logarithmic negativity) of the state."""
    eta, _ = symplectic_eigenvalues(v, partial_transpose=True)
    return negativity(eta, mode), log_negativity(eta)


def report(v: CovarianceMatrix, mode: str = "standard") -> EntanglementReport:
    zp, zm = simon_invariants(v)
    el, eg = symplectic_eigenvalues(v, partial_transpose=False)
    ebl, ebg = symplectic_eigenvalues(v, partial_transpose=True)
    return EntanglementReport(
        zeta_plus=zp,
        zeta_minus=zm,
        eta_less=el,
        eta_greater=eg,
        eta_bar_less=ebl,
        eta_bar_greater=ebg,
        det_c=v.det_c,
        negativity=negativity(ebl, mode),
        log_negativity=log_negativity(ebl),
        entangled=ebl < 0.5,
    )
