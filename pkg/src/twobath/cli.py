"""Command-line front end.

    twobath covariance      --config run.ini
    twobath criterion-sweep --config run.ini
    twobath critical-line   --config run.ini [--threads N]
    twobath oracle-check    --config run.ini [--seed U64]

CSV goes to ``--output`` (or ``[output] path``, else stdout).  Exit status:
0 success, 2 configuration error, 3 numerical failure, 4 oracle check failed.
"""
from __future__ import annotations

import argparse
import io
import math
import sys as _sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .approx import ClosedFormDomainError, approx_covariance, critical_beta_leading
from .config import ConfigError, RunConfig, load_config
from .covariance import ELEMENTS, SteadyStateProblem, steady_covariance
from .critical import CriticalQuery, critical_line
from .entanglement import InvalidCovarianceError, simon_invariants, symplectic_eigenvalues
from .model import ModelError
from .oracle import (
    McConfig,
    classical_covariance,
    classical_quadrature_check,
    equipartition_covariance,
    mc_covariance,
    normalized_discrepancy,
)

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_CONFIG", "EXIT_NUMERIC", "EXIT_ORACLE"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_ORACLE = 4

COVARIANCE_COLUMNS = ("beta1", "beta2", *ELEMENTS, "eta_less", "eta_greater",
                      "eta_bar_less", "eta_bar_greater", "zeta_plus", "zeta_minus",
                      "log_negativity", "entangled")
SWEEP_COLUMNS = ("sweep_value", "zeta_plus", "eta_bar_less_minus_half",
                 "zeta_plus_approx", "eta_bar_less_minus_half_approx")

# oracle-check tolerances
CLASSICAL_TOL = 1e-8
EQUIPARTITION_TOL = 1e-8
CUTOFF_TOL = 0.05
CUTOFF_TOL_PRE_ASYMPTOTIC = 0.2
MC_SIGMAS = 3.0


class _Csv:
    def __init__(self, precision: int):
        self.buf = io.StringIO(newline="")
        self.precision = precision

    def _fmt(self, x):
        if isinstance(x, bool):
            return "true" if x else "false"
        if isinstance(x, str):
            return x
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, f".{self.precision}g")

    def row(self, values):
        self.buf.write(",".join(self._fmt(v) for v in values) + "\n")

    def text(self) -> str:
        return self.buf.getvalue()


def _problem(cfg: RunConfig, beta1=None, beta2=None) -> SteadyStateProblem:
    b1 = cfg.bath1 if beta1 is None else cfg.bath1.with_beta(beta1)
    b2 = cfg.bath2 if beta2 is None else cfg.bath2.with_beta(beta2)
    return SteadyStateProblem(cfg.sys, b1, b2, cfg.quad)


def _covariance_row(cfg: RunConfig):
    p = _problem(cfg)
    v = steady_covariance(p)
    el, eg = symplectic_eigenvalues(v)
    ebl, ebg = symplectic_eigenvalues(v, partial_transpose=True)
    zp, zm = simon_invariants(v)
    lneg = 0.0 if ebl >= 0.5 else -math.log(2 * ebl)
    return [p.bath1.beta, p.bath2.beta, *v.as_vector(), el, eg, ebl, ebg, zp, zm,
            lneg, bool(ebl < 0.5)]


def cmd_covariance(cfg: RunConfig) -> str:
    out = _Csv(cfg.output.precision)
    out.row(COVARIANCE_COLUMNS)
    out.row(_covariance_row(cfg))
    return out.text()


def _sweep_point(args):
    cfg, x = args
    kw = {cfg.sweep.variable: x}
    p = _problem(cfg, **kw)
    v = steady_covariance(p)
    zp = simon_invariants(v)[0]
    eta = symplectic_eigenvalues(v, partial_transpose=True)[0] - 0.5
    va = approx_covariance(cfg.sys, p.bath1, p.bath2, cfg.quad.cutoff)
    zpa = simon_invariants(va)[0]
    try:
        etaa = symplectic_eigenvalues(va, partial_transpose=True)[0] - 0.5
    except InvalidCovarianceError:
        # the truncated expansion is not a valid state far outside its regime
        etaa = math.nan
    return [x, zp, eta, zpa, etaa]


def _map(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(i) for i in items]


def cmd_criterion_sweep(cfg: RunConfig, threads: int = 1) -> str:
    if cfg.sweep is None:
        raise ConfigError("criterion-sweep needs a [sweep] section")
    rows = _map(_sweep_point, [(cfg, x) for x in cfg.sweep.values], threads)
    out = _Csv(cfg.output.precision)
    out.row(SWEEP_COLUMNS)
    for r in rows:
        out.row(r)
    return out.text()


def cmd_critical_line(cfg: RunConfig, threads: int = 1) -> str:
    """The sweep variable is the inverse temperature held fixed; the other
    bath's critical inverse temperature is solved for at each point."""
    if cfg.sweep is None:
        raise ConfigError("critical-line needs a [sweep] section")
    fixed = 2 if cfg.sweep.variable == "beta2" else 1
    q = CriticalQuery(
        cfg.sys, cfg.bath1, cfg.bath2, fixed_bath=fixed, fixed_beta=cfg.sweep.values[0],
        bracket=cfg.critical.bracket, root_tol=cfg.critical.root_tol, quad=cfg.quad,
    )
    line = critical_line(q, cfg.sweep.values, workers=threads)
    cols = ["fixed_beta", "critical_beta", "status"]
    if cfg.critical.analytic:
        cols.append("analytic")
    out = _Csv(cfg.output.precision)
    out.row(cols)
    for pt in line.points:
        row = [pt.fixed_beta, pt.critical_beta, pt.status]
        if cfg.critical.analytic:
            if fixed == 2:
                free, held = cfg.bath1, cfg.bath2.with_beta(pt.fixed_beta)
            else:
                free, held = cfg.bath2, cfg.bath1.with_beta(pt.fixed_beta)
            try:
                row.append(critical_beta_leading(cfg.sys, free, held, cfg.quad.cutoff))
            except ClosedFormDomainError:
                row.append(math.nan)
        out.row(row)
    return out.text()


def _worst(d: dict) -> tuple[str, float]:
    k = max(d, key=d.get)
    return k, d[k]


def oracle_checks(cfg: RunConfig, mc: McConfig | None = None) -> list[tuple[str, str, str]]:
    """(name, "PASS"|"FAIL"|"SKIP", detail) for every check."""
    res = []
    s, b1, b2 = cfg.sys, cfg.bath1, cfg.bath2

    d = classical_quadrature_check(s, b1, b2)
    k, e = _worst(d)
    res.append(("classical-limit", "PASS" if e <= CLASSICAL_TOL else "FAIL",
                f"max discrepancy {e:.3e} ({k}), tol {CLASSICAL_TOL:g}"))

    eq = classical_covariance(s, b1, b2.with_beta(b1.beta)).covariance
    d = normalized_discrepancy(equipartition_covariance(s, b1.beta), eq)
    k, e = _worst(d)
    res.append(("equipartition", "PASS" if e <= EQUIPARTITION_TOL else "FAIL",
                f"max discrepancy {e:.3e} ({k}), tol {EQUIPARTITION_TOL:g}"))

    p = _problem(cfg)
    v = steady_covariance(p, check=False)
    w = steady_covariance(p.swapped(), check=False).swapped()
    tol = cfg.oracle.swap_tol_factor * cfg.quad.rel_tol
    k, e = _worst(normalized_discrepancy(v, w))
    res.append(("swap-symmetry", "PASS" if e <= tol else "FAIL",
                f"max discrepancy {e:.3e} ({k}), tol {tol:.1e}"))

    # the momentum variances grow as (2 m gamma_a / pi) ln(cutoff)
    lam = cfg.quad.cutoff
    v2 = steady_covariance(
        SteadyStateProblem(s, b1, b2, replace(cfg.quad, cutoff=2 * lam)), check=False
    )
    m = s.m
    pred22 = 2 * m * b1.gamma / math.pi * math.log(2)
    pred44 = 2 * m * b2.gamma / math.pi * math.log(2)
    r22 = (v2.v22 - v.v22) / pred22 - 1
    r44 = (v2.v44 - v.v44) / pred44 - 1
    asymptotic = lam >= 10 * max(s.omega_plus, 1 / b1.beta, 1 / b2.beta)
    ctol = CUTOFF_TOL if asymptotic else CUTOFF_TOL_PRE_ASYMPTOTIC
    ok = max(abs(r22), abs(r44)) <= ctol
    res.append(("cutoff-sensitivity", "PASS" if ok else "FAIL",
                f"dv22 {v2.v22 - v.v22:.6g} vs {pred22:.6g} ({r22:+.2%}), "
                f"dv44 {v2.v44 - v.v44:.6g} vs {pred44:.6g} ({r44:+.2%}), "
                f"cutoff {lam:g} -> {2 * lam:g}"
                + ("" if asymptotic else ", pre-asymptotic")
                + f", tol {ctol:.0%}"))

    if mc is None:
        res.append(("monte-carlo", "SKIP", "skipped (disabled)"))
    else:
        r = mc_covariance(s, b1, b2, mc)
        # the synthesised noise is band-limited at omega_max
        ref_p = SteadyStateProblem(s, b1, b2, replace(cfg.quad, cutoff=mc.omega_max))
        ref = steady_covariance(ref_p, kernel=mc.spectrum, check=False)
        z = {k: abs(getattr(r.covariance, k) - getattr(ref, k)) / getattr(r.stderr, k)
             for k in ELEMENTS if getattr(r.stderr, k) > 0}
        k, e = _worst(z)
        res.append(("monte-carlo", "PASS" if e <= MC_SIGMAS else "FAIL",
                    f"max |z| {e:.2f} ({k}) over {mc.n_traj} trajectories, tol {MC_SIGMAS:g} sigma"))
    return res


def cmd_oracle_check(cfg: RunConfig, seed: int | None = None) -> tuple[str, bool]:
    mc = None
    if cfg.oracle.mc:
        mc = cfg.oracle.mc_config
        if seed is not None:
            mc = replace(mc, seed=seed)
    checks = oracle_checks(cfg, mc)
    lines = [f"{status} {name}: {detail}" for name, status, detail in checks]
    ok = all(status != "FAIL" for _, status, _ in checks)
    return "\n".join(lines) + "\n", ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="INI run configuration")
    common.add_argument("--output", metavar="PATH", help="output file (default: [output] path or stdout)")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=None, metavar="U64", help="Monte Carlo seed override")

    ap = argparse.ArgumentParser(prog="twobath", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("covariance", parents=[common], help="steady covariance and entanglement row")
    sub.add_parser("criterion-sweep", parents=[common], help="separability criteria along a beta sweep")
    sub.add_parser("critical-line", parents=[common], help="critical inverse temperatures")
    sub.add_parser("oracle-check", parents=[common], help="independent consistency checks")
    return ap


def _write(text: str, path: str | None):
    if path in (None, "", "-"):
        _sys.stdout.write(text)
        _sys.stdout.flush()
    else:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=_sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=_sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config)
        if args.command == "covariance":
            text, status = cmd_covariance(cfg), EXIT_OK
        elif args.command == "criterion-sweep":
            text, status = cmd_criterion_sweep(cfg, args.threads), EXIT_OK
        elif args.command == "critical-line":
            text, status = cmd_critical_line(cfg, args.threads), EXIT_OK
        else:
            text, ok = cmd_oracle_check(cfg, args.seed)
            status = EXIT_OK if ok else EXIT_ORACLE
    except ConfigError as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, ModelError, InvalidCovarianceError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=_sys.stderr)
        return EXIT_NUMERIC
    _write(text, args.output if args.output is not None else cfg.output.path)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
