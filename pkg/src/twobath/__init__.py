"""Steady-state entanglement of two coupled oscillators, each attached to
its own thermal bath at a different temperature."""
from .model import (
    BathParams,
    ModelError,
    SingularResponseError,
    SystemParams,
    WeakDampingWarning,
    dmatrix,
    hadamard_kernel,
    normal_modes,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate, integrate_halfline
from .covariance import CovarianceMatrix, HeisenbergViolation, SteadyStateProblem, steady_covariance
from .entanglement import (
    EntanglementReport,
    log_negativity,
    measures,
    negativity,
    phs_test,
    report,
    simon_invariants,
    symplectic_eigenvalues,
)
from .approx import approx_covariance, beta1c_closed_form, critical_beta_leading, regime_report
from .critical import CriticalQuery, CriticalLine, critical_line, solve_critical
from .oracle import McConfig, classical_covariance, equipartition_covariance, mc_covariance

__version__ = "0.1.0"

__all__ = [
    "BathParams", "ModelError", "SingularResponseError", "SystemParams", "WeakDampingWarning",
    "dmatrix", "hadamard_kernel", "normal_modes",
    "QuadratureConfig", "QuadratureResult", "integrate", "integrate_halfline",
    "CovarianceMatrix", "HeisenbergViolation", "SteadyStateProblem", "steady_covariance",
    "EntanglementReport", "log_negativity", "measures", "negativity", "phs_test", "report",
    "simon_invariants", "symplectic_eigenvalues",
    "approx_covariance", "beta1c_closed_form", "critical_beta_leading", "regime_report",
    "CriticalQuery", "CriticalLine", "critical_line", "solve_critical",
    "McConfig", "classical_covariance", "equipartition_covariance", "mc_covariance",
]
