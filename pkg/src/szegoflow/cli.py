"""Command-line entry point.

    szegoflow --command evolve --symbol '{"preset": "plus_eps", "eps": 0.5}' --t 1
    szegoflow --command inflate --eps 0.2 --delta 0.25 --R 3 --nsub 16 --N 1024
    szegoflow --config run.json --format json --out run.json.out

Exit codes: 0 success, 2 invalid configuration, 3 numerical or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, fields

import numpy as np

from .conserved import AUDIT_COLUMNS, audit
from .errors import NumericalError
from .experiments.appendix import APPENDIX_COLUMNS, AppendixParams, appendix_report
from .experiments.inflation import INFLATION_COLUMNS, InflationParams, inflation_run
from .flow import SzegoFlow, default_dt, rk4_evolve
from .hardy import next_pow2, symbol_from_spec
from .report import Report, emit

log = logging.getLogger("szegoflow")

COMMANDS = ("evolve", "compare", "conserve", "inflate", "toeplitz-kernel")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str | None = None
    symbol: object = None
    t: float | None = None
    N: int | None = None
    M: int | None = None
    dt: float | None = None
    eps: list | None = None
    delta: float | None = None
    R: float | None = None
    nsub: int | None = None
    grid_m: int | None = None
    out: str | None = None
    format: str = "csv"
    seed: int = 0


def _positive(cfg, name, kind=float, required=False):
    v = getattr(cfg, name)
    if v is None:
        if required:
            raise ConfigError(f"{name}: required for command {cfg.command!r}")
        return
    try:
        cast = kind(v)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected a {kind.__name__}, got {v!r}") from None
    if kind is int and cast != v:
        raise ConfigError(f"{name}: expected an integer, got {v!r}")
    if not (np.isfinite(cast) and cast > 0):
        raise ConfigError(f"{name}: must be positive, got {v!r}")
    setattr(cfg, name, cast)


def validate(cfg: RunConfig) -> RunConfig:
    if cfg.command not in COMMANDS:
        raise ConfigError(f"command: must be one of {', '.join(COMMANDS)}, got {cfg.command!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format: must be csv or json, got {cfg.format!r}")
    try:
        cfg.seed = int(cfg.seed)
    except (TypeError, ValueError):
        raise ConfigError(f"seed: expected an integer, got {cfg.seed!r}") from None
    if cfg.t is not None:
        try:
            cfg.t = float(cfg.t)
        except (TypeError, ValueError):
            raise ConfigError(f"t: expected a real number, got {cfg.t!r}") from None
        if not np.isfinite(cfg.t) or cfg.t < 0:
            raise ConfigError(f"t: must be a finite number >= 0, got {cfg.t!r}")
    for name in ("N", "M", "nsub", "grid_m"):
        _positive(cfg, name, int)
    for name in ("dt", "delta", "R"):
        _positive(cfg, name)
    if cfg.eps is not None:
        eps = cfg.eps if isinstance(cfg.eps, (list, tuple)) else [cfg.eps]
        try:
            cfg.eps = [float(e) for e in eps]
        except (TypeError, ValueError):
            raise ConfigError(f"eps: expected real numbers, got {cfg.eps!r}") from None
        if not cfg.eps or any(not (np.isfinite(e) and e > 0) for e in cfg.eps):
            raise ConfigError(f"eps: must be positive, got {cfg.eps!r}")

    if cfg.command in ("evolve", "compare", "conserve"):
        if cfg.symbol is None:
            raise ConfigError(f"symbol: required for command {cfg.command!r}")
    elif cfg.command == "inflate":
        if cfg.eps is None:
            raise ConfigError("eps: required for command 'inflate'")
        _positive(cfg, "delta", required=True)
        _positive(cfg, "R", required=True)
        _positive(cfg, "nsub", int, required=True)
    elif cfg.command == "toeplitz-kernel":
        if cfg.eps is None:
            raise ConfigError("eps: required for command 'toeplitz-kernel'")
        if any(e >= 0.5 for e in cfg.eps):
            raise ConfigError(f"eps: must lie in (0, 1/2), got {cfg.eps!r}")
        if cfg.grid_m is not None and cfg.grid_m & (cfg.grid_m - 1):
            raise ConfigError(f"grid_m: must be a power of two, got {cfg.grid_m}")
    return cfg


def _symbol(cfg):
    try:
        return symbol_from_spec(cfg.symbol, seed=cfg.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _default_N(u):
    return max(64, next_pow2(4 * u.size))


def _audit_values(a):
    return dict(zip(AUDIT_COLUMNS, a.row()))


def _evolve(cfg):
    u = _symbol(cfg)
    t = 1.0 if cfg.t is None else cfg.t
    N = cfg.N or _default_N(u)
    M = cfg.M or u.size
    if M > N:
        raise ConfigError(f"M: must be <= N={N}, got {M}")
    flow = SzegoFlow(u, N)
    report = Report("evolve", ["coeffs", *AUDIT_COLUMNS])
    for tt in (0.0, t):
        state = flow.coefficients(tt, N)
        report.add(coeffs=state[:M], **_audit_values(audit(state, N, t=tt)))
    return report


def _compare(cfg):
    u = _symbol(cfg)
    t = 1.0 if cfg.t is None else cfg.t
    N = cfg.N or _default_N(u)
    dt = cfg.dt or default_dt(u)
    exact = SzegoFlow(u, N).coefficients(t, N)
    rk4 = rk4_evolve(u, t, dt, N).states[-1]
    report = Report("compare", ["t", "N", "dt", "max_abs_diff", "l2_exact", "l2_rk4"])
    report.add(t=t, N=N, dt=dt, max_abs_diff=float(np.max(np.abs(exact - rk4))),
               l2_exact=float(np.linalg.norm(exact)), l2_rk4=float(np.linalg.norm(rk4)))
    return report


def _conserve(cfg):
    u = _symbol(cfg)
    t = 1.0 if cfg.t is None else cfg.t
    N = cfg.N or _default_N(u)
    flow = SzegoFlow(u, N)
    report = Report("conserve", list(AUDIT_COLUMNS))
    for tt in np.linspace(0.0, t, 5):
        report.add(**_audit_values(audit(flow.coefficients(tt, N), N, t=tt)))
    return report


def _inflate(cfg):
    report = Report("inflate", list(INFLATION_COLUMNS))
    for eps in cfg.eps:
        try:
            p = InflationParams(delta=cfg.delta, eps=eps, R=cfg.R, Nsub=cfg.nsub)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        r = inflation_run(p, cfg.N, cfg.M)
        report.add(**dict(zip(INFLATION_COLUMNS, r.row())))
    return report


def _toeplitz_kernel(cfg):
    report = Report("toeplitz-kernel", list(APPENDIX_COLUMNS))
    for eps in cfg.eps:
        try:
            p = AppendixParams(eps=eps, grid_M=cfg.grid_m or 1 << 16,
                               trunc_K=cfg.M or 64, dim_N=cfg.N or 512)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        r = appendix_report(p, seed=cfg.seed)
        log.info("eps=%g truncated_residual=%.3e control_residual=%.3e",
                 eps, r.truncated_residual, r.control_residual)
        report.add(**dict(zip(APPENDIX_COLUMNS, r.row())))
    return report


_DISPATCH = {
    "evolve": _evolve,
    "compare": _compare,
    "conserve": _conserve,
    "inflate": _inflate,
    "toeplitz-kernel": _toeplitz_kernel,
}


def run(config: RunConfig) -> int:
    """Execute one command and write its report; returns the exit code."""
    try:
        cfg = validate(config)
        report = _DISPATCH[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        emit(report, cfg.format, cfg.out)
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _eps_list(text):
    return [float(x) for x in str(text).split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="szegoflow", description=__doc__.split("\n\n")[0],
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config", help="JSON file with default values for the flags below")
    ap.add_argument("--command", choices=COMMANDS)
    ap.add_argument("--symbol", help="symbol as a JSON file path or inline JSON")
    ap.add_argument("--t", type=float, help="final time")
    ap.add_argument("--N", type=int, help="truncation dimension (dim_N for toeplitz-kernel)")
    ap.add_argument("--M", type=int, help="output coefficients (trunc_K for toeplitz-kernel)")
    ap.add_argument("--dt", type=float, help="RK4 step for compare")
    ap.add_argument("--eps", type=_eps_list, help="eps, or a comma separated sweep")
    ap.add_argument("--delta", type=float)
    ap.add_argument("--R", type=float)
    ap.add_argument("--nsub", type=int)
    ap.add_argument("--grid-m", dest="grid_m", type=int)
    ap.add_argument("--out", help="output path (default: standard output)")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--seed", type=int)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config: cannot read {path} ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for key, value in data.items():
        name = key.replace("-", "_")
        if name not in known:
            raise ConfigError(f"config: unknown field {key!r}")
        out[name] = value
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    values = {}
    if args.config:
        try:
            values = _load_config(args.config)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return run(RunConfig(**values))


if __name__ == "__main__":
    sys.exit(main())
