"""INI run configuration for the command-line tools.

Example::

    [system]
    m = 1
    omega = 5
    sigma = 24

    [bath1]
    gamma_bar = 0.005
    alpha = 0
    beta = 1.0

    [bath2]
    gamma_bar = 0.25
    alpha = 0
    beta = 1.5

    [quadrature]
    cutoff = 5000
    rel_tol = 1e-9

    [sweep]
    variable = beta1
    start = 0.01
    stop = 3
    count = 50
    scale = log

    [output]
    precision = 12

``[sweep]`` accepts either ``values = a, b, c`` or ``start/stop/count``
(with ``scale = linear|log``).  Unknown sections or keys are rejected.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .model import BathParams, ModelError, SystemParams
from .oracle import McConfig
from .quadrature import QuadratureConfig

__all__ = ["ConfigError", "RunConfig", "SweepSpec", "CriticalSettings",
           "OracleSettings", "OutputSettings", "load_config", "parse_config"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class CriticalSettings:
    bracket: tuple[float, float] = (0.01, 1.0)
    root_tol: float = 1e-6
    analytic: bool = False


@dataclass(frozen=True)
class OracleSettings:
    mc: bool = False
    mc_config: McConfig = field(default_factory=McConfig)
    swap_tol_factor: float = 2.0


@dataclass(frozen=True)
class OutputSettings:
    path: str | None = None
    precision: int = 12


@dataclass(frozen=True)
class RunConfig:
    sys: SystemParams
    bath1: BathParams
    bath2: BathParams
    quad: QuadratureConfig
    sweep: SweepSpec | None = None
    critical: CriticalSettings = field(default_factory=CriticalSettings)
    oracle: OracleSettings = field(default_factory=OracleSettings)
    output: OutputSettings = field(default_factory=OutputSettings)


_SCHEMA = {
    "system": {"m": False, "omega": True, "sigma": True},
    "bath1": {"gamma_bar": True, "alpha": False, "beta": True},
    "bath2": {"gamma_bar": True, "alpha": False, "beta": True},
    "quadrature": {"cutoff": False, "rel_tol": False, "abs_tol": False,
                   "max_subdivisions": False, "peak_padding": False},
    "sweep": {"variable": True, "values": False, "start": False, "stop": False,
              "count": False, "scale": False},
    "critical": {"bracket_lo": False, "bracket_hi": False, "root_tol": False,
                 "analytic": False},
    "oracle": {"mc": False, "mc_dt": False, "mc_t_end": False, "mc_t_burn": False,
               "mc_n_traj": False, "mc_n_modes": False, "mc_omega_max": False,
               "mc_batch": False, "mc_seed": False, "mc_spectrum": False},
    "output": {"path": False, "precision": False},
}
_REQUIRED_SECTIONS = ("system", "bath1", "bath2")


def _float(cp, sec, key, default=None):
    if not cp.has_option(sec, key):
        if default is None:
            raise ConfigError(f"[{sec}] missing required key '{key}'")
        return default
    raw = cp.get(sec, key)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{sec}] key '{key}': not a number: {raw!r}") from None


def _int(cp, sec, key, default):
    if not cp.has_option(sec, key):
        return default
    raw = cp.get(sec, key)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"[{sec}] key '{key}': not an integer: {raw!r}") from None


def _bool(cp, sec, key, default):
    if not cp.has_option(sec, key):
        return default
    try:
        return cp.getboolean(sec, key)
    except ValueError:
        raise ConfigError(f"[{sec}] key '{key}': not a boolean: {cp.get(sec, key)!r}") from None


def _sweep(cp) -> SweepSpec | None:
    if not cp.has_section("sweep"):
        return None
    sec = "sweep"
    var = cp.get(sec, "variable", fallback=None)
    if var is None:
        raise ConfigError("[sweep] missing required key 'variable'")
    if var not in ("beta1", "beta2"):
        raise ConfigError(f"[sweep] key 'variable': must be beta1 or beta2, got {var!r}")
    if cp.has_option(sec, "values"):
        if any(cp.has_option(sec, k) for k in ("start", "stop", "count")):
            raise ConfigError("[sweep] give either 'values' or 'start/stop/count', not both")
        raw = [t.strip() for t in cp.get(sec, "values").split(",") if t.strip()]
        try:
            vals = tuple(float(t) for t in raw)
        except ValueError:
            raise ConfigError(f"[sweep] key 'values': not a number list: {cp.get(sec, 'values')!r}") from None
    else:
        start = _float(cp, sec, "start")
        stop = _float(cp, sec, "stop")
        count = _int(cp, sec, "count", None)
        if count is None:
            raise ConfigError("[sweep] missing required key 'count'")
        scale = cp.get(sec, "scale", fallback="linear")
        if scale == "linear":
            vals = tuple(float(x) for x in np.linspace(start, stop, count))
        elif scale == "log":
            if not (start > 0 and stop > 0):
                raise ConfigError("[sweep] log scale needs positive start and stop")
            vals = tuple(float(x) for x in np.geomspace(start, stop, count))
        else:
            raise ConfigError(f"[sweep] key 'scale': must be linear or log, got {scale!r}")
    if not vals:
        raise ConfigError("[sweep] empty sweep")
    if not all(v > 0 and math.isfinite(v) for v in vals):
        raise ConfigError("[sweep] sweep values must be positive inverse temperatures")
    return SweepSpec(var, vals)


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None

    for sec in cp.sections():
        if sec not in _SCHEMA:
            raise ConfigError(f"unknown section [{sec}]")
        for key in cp.options(sec):
            if key not in _SCHEMA[sec]:
                raise ConfigError(f"[{sec}] unknown key '{key}'")
    for sec in _REQUIRED_SECTIONS:
        if not cp.has_section(sec):
            raise ConfigError(f"missing section [{sec}]")

    try:
        sys = SystemParams(
            omega=_float(cp, "system", "omega"),
            sigma=_float(cp, "system", "sigma"),
            m=_float(cp, "system", "m", 1.0),
        )
        baths = [
            BathParams(
                gamma_bar=_float(cp, s, "gamma_bar"),
                beta=_float(cp, s, "beta"),
                alpha=_float(cp, s, "alpha", 0.0),
            )
            for s in ("bath1", "bath2")
        ]
        q = "quadrature"
        has_q = cp.has_section(q)
        d = QuadratureConfig()
        quad = QuadratureConfig(
            cutoff=_float(cp, q, "cutoff", d.cutoff) if has_q else d.cutoff,
            rel_tol=_float(cp, q, "rel_tol", d.rel_tol) if has_q else d.rel_tol,
            abs_tol=_float(cp, q, "abs_tol", d.abs_tol) if has_q else d.abs_tol,
            max_subdivisions=_int(cp, q, "max_subdivisions", d.max_subdivisions) if has_q else d.max_subdivisions,
            peak_padding=_float(cp, q, "peak_padding", d.peak_padding) if has_q else d.peak_padding,
        )
    except (ModelError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None

    crit = CriticalSettings()
    if cp.has_section("critical"):
        c = "critical"
        lo = _float(cp, c, "bracket_lo", crit.bracket[0])
        hi = _float(cp, c, "bracket_hi", crit.bracket[1])
        if not 0 < lo < hi:
            raise ConfigError("[critical] need 0 < bracket_lo < bracket_hi")
        tol = _float(cp, c, "root_tol", crit.root_tol)
        if not 0 < tol < 1:
            raise ConfigError("[critical] root_tol must lie in (0, 1)")
        crit = CriticalSettings((lo, hi), tol, _bool(cp, c, "analytic", False))

    orc = OracleSettings()
    if cp.has_section("oracle"):
        o = "oracle"
        dm = McConfig()
        spectrum = cp.get(o, "mc_spectrum", fallback=dm.spectrum)
        if spectrum not in ("quantum", "classical"):
            raise ConfigError("[oracle] mc_spectrum must be quantum or classical")
        seed = _int(cp, o, "mc_seed", dm.seed)
        if not 0 <= seed < 2 ** 64:
            raise ConfigError("[oracle] mc_seed must be an unsigned 64-bit integer")
        mc = McConfig(
            dt=_float(cp, o, "mc_dt", dm.dt),
            t_end=_float(cp, o, "mc_t_end", dm.t_end),
            t_burn=_float(cp, o, "mc_t_burn", dm.t_burn),
            n_traj=_int(cp, o, "mc_n_traj", dm.n_traj),
            seed=seed,
            n_modes=_int(cp, o, "mc_n_modes", dm.n_modes),
            omega_max=_float(cp, o, "mc_omega_max", dm.omega_max),
            batch=_int(cp, o, "mc_batch", dm.batch),
            spectrum=spectrum,
        )
        orc = OracleSettings(_bool(cp, o, "mc", False), mc)

    out = OutputSettings()
    if cp.has_section("output"):
        prec = _int(cp, "output", "precision", out.precision)
        if not 1 <= prec <= 17:
            raise ConfigError("[output] precision must lie in 1..17")
        out = OutputSettings(cp.get("output", "path", fallback=None), prec)

    return RunConfig(sys, baths[0], baths[1], quad, _sweep(cp), crit, orc, out)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, source=str(path))
