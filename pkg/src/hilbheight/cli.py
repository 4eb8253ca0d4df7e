"""Command-line interface.

Subcommands share one set of grid options; every one except ``selfcheck``
and ``monomial-norm`` reads a variety file (see :mod:`hilbheight.varieties`).
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from .estimation import SampleFailure, estimate_height, sample_range
from .hilbert import MODES, HilbertSample
from .ideal import InsufficientSamples, hilbert_geom
from .metrics import (
    INF,
    MetricParameter,
    QuadratureBudgetExceeded,
    metric_label,
    monomial_norm_exact,
    monomial_norm_numeric,
    parse_metric,
)
from .place_norms import DEFAULT_MINOR_BUDGET, MinorBudgetExceeded
from .selfcheck import run_selfcheck
from .varieties import VarietyFileError, load_variety, report_to_json, resolve_oracle, samples_to_csv

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_SELFCHECK = 0, 1, 2, 3

ENV_BUDGET = "HILBHEIGHT_MINOR_BUDGET"
ENV_TOL = "HILBHEIGHT_TOL"
ENV_JOBS = "HILBHEIGHT_JOBS"

EPILOG = f"""\
environment:
  {ENV_BUDGET}  default for --budget (maximal-minor enumeration limit, {DEFAULT_MINOR_BUDGET})
  {ENV_TOL}         default for --tol (relative quadrature tolerance, 1e-8)
  {ENV_JOBS}        default for --jobs (worker processes, 1)

exit status:
  0 success, 1 usage or parse error, 2 computation refused (budget), 3 selfcheck failure
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    variety: str | None
    dmin: int
    dmax: int
    dstep: int
    ks: tuple[MetricParameter, ...]
    mode: str
    tol: float
    budget: int
    jobs: int
    output: str | None
    fmt: str
    model: str

    @property
    def degrees(self) -> list[int]:
        return list(range(self.dmin, self.dmax + 1, self.dstep))


def _env(name: str, cast, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not a valid value") from None


def _ks(text: str) -> tuple[MetricParameter, ...]:
    try:
        out = tuple(parse_metric(t.strip()) for t in text.split(",") if t.strip())
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not out:
        raise argparse.ArgumentTypeError("at least one metric parameter is required")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="hilbheight",
        description="Arithmetic Hilbert functions and normalized heights of projective varieties over Q.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    grid = _Parser(add_help=False)
    grid.add_argument("--variety", required=True, help="variety JSON file")
    grid.add_argument("--dmin", type=int, default=1)
    grid.add_argument("--dmax", type=int, default=10)
    grid.add_argument("--dstep", type=int, default=1)
    grid.add_argument("--mode", choices=MODES, default="auto",
                      help="auto: exact sup norm when affordable, else Gram bracket")
    grid.add_argument("--tol", type=float, default=None, help=f"quadrature tolerance (env {ENV_TOL})")
    grid.add_argument("--budget", type=int, default=None, help=f"minor enumeration budget (env {ENV_BUDGET})")
    grid.add_argument("--jobs", type=int, default=None, help=f"worker processes (env {ENV_JOBS})")
    grid.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    grid.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)

    def add(name, help, fmt="csv", ks="1,inf"):
        sp = sub.add_parser(name, parents=[grid], help=help, epilog=EPILOG,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("--k", dest="ks", type=_ks, default=_ks(ks),
                        help="comma-separated metric parameters, e.g. 1,4,inf")
        sp.set_defaults(default_fmt=fmt)
        return sp

    add("geom", "geometric Hilbert function")
    add("norm", "normalized arithmetic Hilbert function")
    add("arith", "metric arithmetic Hilbert functions")
    est = add("estimate", "normalized height estimate", fmt="json")
    est.add_argument("--model", choices=("fit", "last"), default="fit")

    orc = sub.add_parser("oracle", help="reference height from the variety file")
    orc.add_argument("--variety", required=True)
    orc.add_argument("--tol", type=float, default=None)

    mn = sub.add_parser("monomial-norm", help="inspect nu_{a,k}")
    mn.add_argument("--exponents", "-a", required=True, help="comma-separated exponent vector")
    mn.add_argument("--k", default="1")
    mn.add_argument("--tol", type=float, default=None)

    sc = sub.add_parser("selfcheck", help="run the built-in invariant suite")
    sc.add_argument("--seed", type=int, default=0)
    return p


def _config(args) -> RunConfig:
    tol = args.tol if args.tol is not None else _env(ENV_TOL, float, 1e-8)
    budget = args.budget if args.budget is not None else _env(ENV_BUDGET, int, DEFAULT_MINOR_BUDGET)
    jobs = args.jobs if args.jobs is not None else _env(ENV_JOBS, int, 1)
    if not 1 <= args.dmin <= args.dmax:
        raise UsageError("need 1 <= dmin <= dmax")
    if args.dstep < 1:
        raise UsageError("dstep must be positive")
    if not tol > 0:
        raise UsageError("tolerance must be positive")
    if budget < 1 or jobs < 1:
        raise UsageError("budget and jobs must be positive")
    return RunConfig(
        variety=args.variety,
        dmin=args.dmin,
        dmax=args.dmax,
        dstep=args.dstep,
        ks=args.ks,
        mode=args.mode,
        tol=tol,
        budget=budget,
        jobs=jobs,
        output=args.output,
        fmt=args.fmt or args.default_fmt,
        model=getattr(args, "model", "fit"),
    )


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "degrees": cfg.degrees,
        "ks": [metric_label(k) for k in cfg.ks],
        "mode": cfg.mode,
        "budget": cfg.budget,
        "tol": cfg.tol,
    }


def _cmd_geom(cfg: RunConfig) -> int:
    vf = load_variety(cfg.variety)
    rows = [(D, hilbert_geom(vf.variety, D)) for D in cfg.degrees]
    if cfg.fmt == "csv":
        _emit("D,H_geom\n" + "".join(f"{D},{h}\n" for D, h in rows), cfg.output)
    else:
        doc = {"variety": vf.variety.name, "config": _config_dict(cfg),
               "samples": [{"D": D, "H_geom": h} for D, h in rows]}
        _emit(report_to_json(doc, _timestamp()), cfg.output)
    return EXIT_OK


def _cmd_samples(cfg: RunConfig, with_arith: bool) -> int:
    vf = load_variety(cfg.variety)
    ks = cfg.ks if with_arith else ()
    results = sample_range(vf.variety, cfg.degrees, ks, cfg.mode, cfg.budget, cfg.tol, cfg.jobs)
    samples = [r for r in results if isinstance(r, HilbertSample)]
    failures = [r for r in results if isinstance(r, SampleFailure)]
    for f in failures:
        print(f"warning: D={f.D}: {f.reason}", file=sys.stderr)
    if cfg.fmt == "csv":
        _emit(samples_to_csv(samples), cfg.output)
    else:
        doc = {"variety": vf.variety.name, "config": _config_dict(cfg),
               "samples": [s.to_dict() for s in samples],
               "failures": [f.to_dict() for f in failures]}
        _emit(report_to_json(doc, _timestamp()), cfg.output)
    return EXIT_OK


def _cmd_estimate(cfg: RunConfig) -> int:
    vf = load_variety(cfg.variety)
    oracle = resolve_oracle(vf.oracle, vf.variety)
    report = estimate_height(
        vf.variety, cfg.degrees, cfg.ks, cfg.mode, cfg.model, oracle, cfg.budget, cfg.tol, cfg.jobs
    )
    for f in report.failures:
        print(f"warning: D={f.D}: {f.reason}", file=sys.stderr)
    if cfg.fmt == "csv":
        _emit(samples_to_csv(report.samples, report.normalized), cfg.output)
    else:
        _emit(report_to_json(report, _timestamp()), cfg.output)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    tol = args.tol if args.tol is not None else _env(ENV_TOL, float, 1e-9)
    vf = load_variety(args.variety)
    if vf.oracle is None:
        raise UsageError(f"{args.variety}: no oracle configured")
    val = resolve_oracle(vf.oracle, vf.variety, tol)
    doc = {"variety": vf.variety.name, **val.to_dict()}
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_monomial_norm(args) -> int:
    try:
        a = tuple(int(x) for x in args.exponents.split(","))
        k = parse_metric(args.k)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if len(a) < 2 or min(a) < 0:
        raise UsageError("exponents need at least two non-negative entries")
    doc = {"a": list(a), "k": metric_label(k)}
    if k == 1 or k == INF:
        v = monomial_norm_exact(a, k)
        doc.update(value=float(v), exact=str(v), error=0.0)
    else:
        tol = args.tol if args.tol is not None else _env(ENV_TOL, float, 1e-8)
        v = monomial_norm_numeric(a, k, tol)
        doc.update(value=v.value, error=v.error)
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selfcheck":
            results = run_selfcheck(args.seed, emit=print)
            return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_SELFCHECK
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "monomial-norm":
            return _cmd_monomial_norm(args)
        cfg = _config(args)
        if args.command == "geom":
            return _cmd_geom(cfg)
        if args.command == "estimate":
            return _cmd_estimate(cfg)
        return _cmd_samples(cfg, with_arith=args.command == "arith")
    except MinorBudgetExceeded as exc:
        print(f"hilbheight: refused: {exc} (raise --budget or {ENV_BUDGET}, or pass --mode bracket)",
              file=sys.stderr)
        return EXIT_REFUSED
    except QuadratureBudgetExceeded as exc:
        print(f"hilbheight: refused: {exc} (loosen --tol or {ENV_TOL})", file=sys.stderr)
        return EXIT_REFUSED
    except (UsageError, VarietyFileError, InsufficientSamples) as exc:
        print(f"hilbheight: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
