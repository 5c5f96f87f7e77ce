"""Closed-form weak-damping approximations for a hot bath 1 and a cold bath 2.

Valid for beta1 Omega_+ << 1, beta2 Omega_- >> 1 and gamma << Omega_-.
Each covariance element is a sum of named terms so that truncations can be
checked term by term; :func:`approx_terms` exposes them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .covariance import ELEMENTS, CovarianceMatrix
from .model import BathParams, SystemParams

__all__ = [
    "ApproxRegimeReport",
    "approx_terms",
    "approx_covariance",
    "regime_report",
    "beta1c_closed_form",
    "ClosedFormDomainError",
    "critical_beta_leading",
]


class ClosedFormDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ApproxRegimeReport:
    beta1_omega_plus: float
    beta2_omega_minus: float
    in_regime: bool


def regime_report(sys: SystemParams, beta1: float, beta2: float,
                  regime_hi: float = 0.5, regime_lo: float = 5.0) -> ApproxRegimeReport:
    x1 = beta1 * sys.omega_plus
    x2 = beta2 * sys.omega_minus
    return ApproxRegimeReport(x1, x2, bool(x1 < regime_hi and x2 > regime_lo))


def _theta(x):
    return 1.0 if x > 0 else 0.0


def approx_terms(sys: SystemParams, bath1: BathParams, bath2: BathParams,
                 cutoff: float) -> dict[str, list[tuple[str, float]]]:
    """Every term of the approximate covariance elements, by element name.

    The ``ln(Lambda / (Omega_+ Omega_-))`` term of v44 is evaluated as written
    in units Omega_0 = 1 (its argument is not dimensionless).
    """
    m = sys.m
    om2 = sys.omega ** 2
    sg = sys.sigma
    wp, wm = sys.omega_plus, sys.omega_minus
    g1, g2 = bath1.gamma, bath2.gamma
    b1, b2 = bath1.beta, bath2.beta
    lam = cutoff
    gs = g1 + g2
    pm2 = wp ** 2 * wm ** 2
    pm4 = wp ** 4 * wm ** 4
    log_pm = math.log(wp / wm)
    pi = math.pi
    uv1 = (g1 * m / pi) * math.log(b1 * lam) * _theta(b1 * lam - 1) if b1 * lam > 0 else 0.0

    return {
        "v11": [
            ("hot", (1 / m) * (om2 / pm2) * g1 / gs / b1),
            ("zero_point", g2 / (4 * m * gs) * (1 / wp + 1 / wm)),
            ("log_split", g2 / (2 * pi * m * sg) * log_pm),
            ("static", -g2 / (2 * pi * m) * (om2 / pm2)),
            ("cold", 2 * pi * g2 * sg ** 2 / (3 * m * pm4) / b2 ** 2),
        ],
        "v22": [
            ("uv_hot", uv1),
            ("hot", m * g1 / gs / b1),
            ("zero_point", m * g2 / (4 * gs) * (wp + wm)),
            ("const", -m * g2 / (2 * pi)),
            ("log_split", m * g2 * om2 / (2 * pi * sg) * log_pm),
            ("cold", 4 * pi ** 3 * m * g2 * sg ** 2 / (15 * pm4) / b2 ** 4),
        ],
        "v33": [],  # equal to v11 at this order
        "v44": [
            ("uv_hot", uv1),
            ("hot", m * g1 / gs / b1),
            ("uv_cold", 2 * m * g2 / pi * math.log(lam / (wp * wm))),
            ("zero_point", m * g2 / (4 * gs) * (wp + wm)),
            ("log_split", m * g2 * om2 / (2 * pi * sg) * log_pm),
            ("const", -m * g2 / (2 * pi)),
            ("cold", 4 * pi ** 3 * m * g2 * sg ** 2 / (15 * pm4) / b2 ** 4),
        ],
        "v13": [
            ("hot", -(1 / m) * (sg / pm2) * g1 / gs / b1),
            ("zero_point", g2 / (4 * m * gs) * (1 / wp - 1 / wm)),
            ("static", g2 / (2 * pi * m) * (sg / pm2)),
            ("cold", -2 * pi * g2 * sg * om2 / (3 * m * pm4) / b2 ** 2),
        ],
        "v14": [
            ("hot", -(2 / sg) * g1 * g2 / gs / b1),
            ("cold", 8 * pi ** 3 * g1 * g2 * sg / (15 * pm4) / b2 ** 4),
        ],
        "v24": [
            ("hot", (m * sg / 12) * g1 * b1 / gs),
            ("zero_point", m * g2 / (4 * gs) * (wp - wm)),
            ("log_split", -(m * g2 / (2 * pi)) * log_pm),
            ("cold", -4 * pi ** 3 * m * g2 * sg * om2 / (15 * pm4) / b2 ** 4),
        ],
    }


def approx_covariance(sys: SystemParams, bath1: BathParams, bath2: BathParams,
                      cutoff: float) -> CovarianceMatrix:
    """Sum of the approximate terms; v33 is set equal to v11."""
    terms = approx_terms(sys, bath1, bath2, cutoff)
    vals = {k: math.fsum(t for _, t in terms[k]) for k in ELEMENTS if k != "v33"}
    vals["v33"] = vals["v11"]
    return CovarianceMatrix(**vals)


def beta1c_closed_form(sys: SystemParams, g1: float, g2: float, cutoff: float,
                       order: str = "leading") -> float:
    """Analytic critical inverse temperature of the hot bath.

    ``order="full"`` keeps the square-root expression with all gamma_1
    dependence; ``order="leading"`` is its O(gamma_1) truncation,
    4 pi g1 / (g2 [pi sqrt(5 W+^2 - 2 W+ W- + W-^2) - pi (W+ + W-) - g2 L]),
    with L = ln(cutoff^4 / Omega_-^4).
    """
    wp, wm = sys.omega_plus, sys.omega_minus
    pi = math.pi
    big_l = abs(math.log(cutoff ** 4 / wm ** 4))
    gs = g1 + g2
    if order == "leading":
        den = g2 * (pi * math.sqrt(5 * wp ** 2 - 2 * wp * wm + wm ** 2) - pi * (wp + wm) - g2 * big_l)
    elif order == "full":
        rad = (pi ** 2 * (4 * g1 ** 2 * wp ** 2 + 8 * g1 * g2 * wp ** 2
                          + g2 ** 2 * (5 * wp ** 2 - 2 * wp * wm + wm ** 2))
               + g2 ** 2 * gs * big_l * (2 * pi * (wm - wp) + gs * big_l))
        if rad < 0:
            raise ClosedFormDomainError("negative radicand in closed-form beta1c")
        den = math.sqrt(rad) - g2 * gs * big_l - pi * g2 * (wp + wm)
    else:
        raise ValueError(f"order must be 'full' or 'leading', got {order!r}")
    if not den > 0:
        raise ClosedFormDomainError(
            f"denominator {den:.4g} <= 0: cutoff too large for the small-gamma expansion"
        )
    return 4 * pi * g1 / den


def critical_beta_leading(sys: SystemParams, free_bath: BathParams, fixed_bath: BathParams,
                          cutoff: float) -> float:
    """Leading-order critical beta of the hot (free) bath with T-dependent damping.

    With gamma_free = gamma_bar * beta**(-alpha) the leading closed form
    beta = 4 pi gamma_free / D(gamma_fixed) solves to
    beta**(1 + alpha) = 4 pi gamma_bar / D.  The labels of the two baths are
    interchangeable because the oscillators are identical.
    """
    unit = beta1c_closed_form(sys, 1.0, fixed_bath.gamma, cutoff, order="leading")
    # unit = 4 pi / D, linear in the free damping
    return (free_bath.gamma_bar * unit) ** (1.0 / (1.0 + free_bath.alpha))
