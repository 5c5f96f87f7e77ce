"""Critical inverse temperatures where the steady state stops being entangled.

For a fixed inverse temperature of one bath, the other bath's inverse
temperature is varied until the smallest partial-transpose symplectic
eigenvalue crosses 1/2.  Damping may depend on temperature as
gamma_bar * T**alpha; the free bath's damping then changes along the search.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .covariance import SteadyStateProblem, steady_covariance
from .entanglement import simon_invariants, symplectic_eigenvalues
from .model import BathParams, SystemParams
from .quadrature import QuadratureConfig

__all__ = [
    "CriticalQuery",
    "CriticalPoint",
    "CriticalLine",
    "NoCrossingError",
    "criterion_value",
    "solve_critical",
    "scan_crossings",
    "critical_line",
    "STATUS_OK",
    "ALWAYS_ENTANGLED",
    "ALWAYS_SEPARABLE",
]

STATUS_OK = "ok"
ALWAYS_ENTANGLED = "always-entangled"
ALWAYS_SEPARABLE = "always-separable"

# bracket grows by this factor per step, at most MAX_EXPANSION overall each way
EXPANSION_STEP = 10.0
MAX_EXPANSION = 1e3


class NoCrossingError(ArithmeticError):
    def __init__(self, status, msg):
        super().__init__(msg)
        self.status = status


@dataclass(frozen=True)
class CriticalQuery:
    """Search specification; the beta of the free bath's template is ignored."""

    sys: SystemParams
    bath1_template: BathParams
    bath2_template: BathParams
    fixed_bath: int = 2
    fixed_beta: float = 1.5
    bracket: tuple[float, float] = (0.01, 1.0)
    root_tol: float = 1e-6
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    criterion: str = "eta"

    def __post_init__(self):
        if self.fixed_bath not in (1, 2):
            raise ValueError("fixed_bath must be 1 or 2")
        if not self.fixed_beta > 0:
            raise ValueError("fixed_beta must be positive")
        lo, hi = self.bracket
        if not 0 < lo < hi:
            raise ValueError(f"need 0 < lo < hi, got bracket {self.bracket}")
        if not 0 < self.root_tol < 1:
            raise ValueError("root_tol must lie in (0, 1)")
        if self.criterion not in ("eta", "zeta"):
            raise ValueError("criterion must be 'eta' or 'zeta'")

    def problem(self, beta_free: float) -> SteadyStateProblem:
        if self.fixed_bath == 2:
            b1 = self.bath1_template.with_beta(beta_free)
            b2 = self.bath2_template.with_beta(self.fixed_beta)
        else:
            b1 = self.bath1_template.with_beta(self.fixed_beta)
            b2 = self.bath2_template.with_beta(beta_free)
        return SteadyStateProblem(self.sys, b1, b2, self.quad)


@dataclass(frozen=True)
class CriticalPoint:
    fixed_beta: float
    critical_beta: float
    status: str = STATUS_OK

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


@dataclass(frozen=True)
class CriticalLine:
    points: tuple[CriticalPoint, ...]
    params: CriticalQuery
    alpha1: float
    alpha2: float

    @property
    def pairs(self) -> list[tuple[float, float]]:
        """(beta2c, beta1c) for the points where a crossing was found."""
        out = []
        for p in self.points:
            if not p.ok:
                continue
            if self.params.fixed_bath == 2:
                out.append((p.fixed_beta, p.critical_beta))
            else:
                out.append((p.critical_beta, p.fixed_beta))
        return out


def criterion_value(beta_free: float, q: CriticalQuery) -> float:
    """eta_bar_< - 1/2 (or zeta_+ for ``criterion="zeta"``) at the given beta."""
    if not beta_free > 0:
        raise ValueError("beta_free must be positive")
    v = steady_covariance(q.problem(beta_free))
    if q.criterion == "zeta":
        return simon_invariants(v)[0]
    return symplectic_eigenvalues(v, partial_transpose=True)[0] - 0.5


def _bisect(q: CriticalQuery, lo, flo, hi, fhi):
    # geometric bisection; the bracket ratio shrinks below 1 + root_tol
    while hi / lo - 1.0 > q.root_tol:
        mid = math.sqrt(lo * hi)
        fm = criterion_value(mid, q)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return math.sqrt(lo * hi)


def solve_critical(q: CriticalQuery) -> float:
    """Critical inverse temperature of the free bath.

    The bracket is widened geometrically (x10 per step, at most 1e3 each
    way) until the criterion changes sign, then bisected in log(beta).
    Raises :class:`NoCrossingError` with status ``"always-entangled"`` or
    ``"always-separable"`` when no sign change is found.
    """
    lo, hi = q.bracket
    pts = {lo: criterion_value(lo, q), hi: criterion_value(hi, q)}

    def crossing():
        xs = sorted(pts)
        for a, b in zip(xs, xs[1:]):
            if pts[a] == 0:
                return a, a
            if (pts[a] < 0) != (pts[b] < 0):
                return a, b
        if pts[xs[-1]] == 0:
            return xs[-1], xs[-1]
        return None

    found = crossing()
    step = 1.0
    while found is None and step < MAX_EXPANSION * (1 - 1e-12):
        step *= EXPANSION_STEP
        pts[lo / step] = criterion_value(lo / step, q)
        found = crossing()
        if found is not None:
            break
        pts[hi * step] = criterion_value(hi * step, q)
        found = crossing()
    if found is None:
        if all(v < 0 for v in pts.values()):
            raise NoCrossingError(ALWAYS_ENTANGLED, "entangled everywhere in the expanded bracket")
        raise NoCrossingError(ALWAYS_SEPARABLE, "separable everywhere in the expanded bracket")
    a, b = found
    if a == b:
        return a
    return _bisect(q, a, pts[a], b, pts[b])


def scan_crossings(q: CriticalQuery, betas: Sequence[float]) -> list[float]:
    """All sign changes of the criterion on a grid of free betas, each refined."""
    xs = np.sort(np.asarray(betas, dtype=float))
    fs = [criterion_value(x, q) for x in xs]
    roots = []
    for a, b, fa, fb in zip(xs, xs[1:], fs, fs[1:]):
        if fa == 0:
            roots.append(float(a))
        elif (fa < 0) != (fb < 0) and fb != 0:
            roots.append(_bisect(q, float(a), fa, float(b), fb))
    if fs and fs[-1] == 0:
        roots.append(float(xs[-1]))
    return roots


def _solve_point(q: CriticalQuery) -> CriticalPoint:
    try:
        return CriticalPoint(q.fixed_beta, solve_critical(q))
    except NoCrossingError as exc:
        return CriticalPoint(q.fixed_beta, math.nan, exc.status)
    except ArithmeticError as exc:
        return CriticalPoint(q.fixed_beta, math.nan, f"error: {exc}")


def critical_line(q: CriticalQuery, sweep: Sequence[float], workers: int = 1) -> CriticalLine:
    """One independent critical solve per fixed beta in ``sweep``.

    Points without a crossing keep a status instead of being dropped.  With
    ``workers > 1`` the solves run in separate processes; the output is
    sorted by the fixed beta either way.
    """
    sweep = sorted(float(b) for b in sweep)
    if not sweep:
        raise ValueError("empty sweep")
    queries = [replace(q, fixed_beta=b) for b in sweep]
    if workers > 1 and len(queries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            pts = list(ex.map(_solve_point, queries))
    else:
        pts = [_solve_point(x) for x in queries]
    return CriticalLine(tuple(pts), q, q.bath1_template.alpha, q.bath2_template.alpha)
