"""Command-line front end.

Subcommands: volume, density, contour-dump, argand-grid, verify.
JSON output carries ``schema_version``; CSV output has a header row and
17 significant digits.  Exit codes: 0 ok, 1 check failure, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import contour, verify
from .charfun import eval_F, eval_modulus
from .density import (
    DensityEstimate,
    IntegrationConfig,
    density_contour,
    density_monte_carlo,
    density_realaxis,
    estimate_partial_fractions,
)
from .direction import (
    DirectionVector,
    as_direction,
    facet_direction,
    facet_section_volume,
    section_volume_from_density,
    volume_lower_bound,
)
from .errors import InputError, NotCentered, NumericalError, SimplexSliceError

SCHEMA_VERSION = 1
CLI_NORM_TOL = 1e-3
POLE_SENTINEL = "inf"
POLE_RADIUS = 1e-12

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

CONTOUR_COLUMNS = ("x", "y", "y_prime", "f_tilde", "residual_phase")
ARGAND_COLUMNS = ("x", "y", "modulus", "argument")
METHODS = {
    "contour": lambda u, cfg, a: density_contour(u, cfg),
    "realaxis": lambda u, cfg, a: density_realaxis(u, cfg),
    "pf": lambda u, cfg, a: estimate_partial_fractions(u),
    "mc": lambda u, cfg, a: density_monte_carlo(u, a.samples, a.bandwidth, a.seed),
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- formatting


def fmt_num(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(v)
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return format(v, ".17g")


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else fmt_num(v)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dump_json(obj: dict) -> str:
    return json.dumps(_json_safe({"schema_version": SCHEMA_VERSION, **obj}), sort_keys=False)


def rows_to_csv(columns: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([c if isinstance(c, str) else fmt_num(c) for c in row])
    return buf.getvalue()


def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ parsing


def parse_direction(text: str, tol: float = CLI_NORM_TOL) -> DirectionVector:
    try:
        vals = [float(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise UsageError(f"cannot parse direction {text!r}: {exc}") from None
    return as_direction(vals, tol)


def resolve_direction(args) -> DirectionVector:
    facet = getattr(args, "facet", None)
    if facet is not None and args.dir is not None:
        raise UsageError("give either --dir or --facet, not both")
    if facet is not None:
        n = getattr(args, "n", None) if facet is True else facet
        if n is None:
            raise UsageError("--facet needs a dimension (--facet N or --n N)")
        return facet_direction(n)
    if args.dir is None:
        raise UsageError("a direction is required (--dir or --facet)")
    return parse_direction(args.dir, args.norm_tol)


def integration_config(args) -> IntegrationConfig:
    return IntegrationConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol, tail_epsilon=args.tail_eps,
                             max_subdivisions=args.max_subdivisions,
                             endpoint_margin=args.endpoint_margin)


def _facet_arg(text):
    return int(text)


def _add_direction(p, facet=True):
    p.add_argument("--dir", help='comma-separated entries, e.g. "0.8,0.6"')
    if facet:
        p.add_argument("--facet", nargs="?", const=True, default=None, type=_facet_arg,
                       metavar="N", help="use the facet direction (dimension from N or --n)")
    p.add_argument("--norm-tol", type=float, default=CLI_NORM_TOL,
                   help="accepted deviation of |u| from 1 before renormalizing (default %(default)g)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--abs-tol", type=float, default=1e-12)
    common.add_argument("--rel-tol", type=float, default=1e-12)
    common.add_argument("--tail-eps", type=float, default=1e-10)
    common.add_argument("--max-subdivisions", type=int, default=20000)
    common.add_argument("--endpoint-margin", type=float, default=1e-6)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(prog="simplexslice",
                                     description="Central sections of the regular simplex.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="central section volume")
    p.add_argument("--n", type=int, help="simplex dimension")
    _add_direction(p)

    p = sub.add_parser("density", parents=[common], help="G_u(0) by one or all methods")
    _add_direction(p)
    p.add_argument("--n", type=int, help="dimension for --facet")
    p.add_argument("--method", choices=(*METHODS, "all"), default="contour")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--bandwidth", type=float, default=0.01)

    p = sub.add_parser("contour-dump", parents=[common], help="samples of the zero-phase contour")
    _add_direction(p)
    p.add_argument("--n", type=int, help="dimension for --facet")
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--resolution", type=int, default=601)

    p = sub.add_parser("argand-grid", parents=[common], help="modulus/argument of F_u on a grid")
    _add_direction(p)
    p.add_argument("--n", type=int, help="dimension for --facet")
    p.add_argument("--re-range", type=float, nargs=2, default=(-10.0, 10.0), metavar=("LO", "HI"))
    p.add_argument("--im-range", type=float, nargs=2, default=(-3.0, 3.0), metavar=("LO", "HI"))
    p.add_argument("--resolution", type=int, default=201)

    p = sub.add_parser("verify", parents=[common], help="run verification checks")
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--check", action="append", choices=verify.ALL_CHECKS)
    p.add_argument("--corpus", choices=("random", "facet"), default="random")
    p.add_argument("--corpus-size", type=int, default=200)
    p.add_argument("--nmax", type=int, default=8, help="largest n for --corpus facet")
    _add_direction(p, facet=False)
    return parser


# ----------------------------------------------------------------- commands


def cmd_volume(args) -> tuple[dict, list, list]:
    if args.n is None:
        if isinstance(args.facet, int) and args.facet is not True:
            args.n = args.facet
        else:
            raise UsageError("volume needs --n")
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    u = resolve_direction(args)
    if u.n_plus_1 > args.n + 1:
        raise UsageError(f"direction has {u.n_plus_1} nonzero entries, more than n+1 = {args.n + 1}")
    if not u.is_centered:
        raise NotCentered(f"central sections need sum(u) = 0, got {u.sum_u:.6g}")
    est = density_contour(u, integration_config(args))
    vol = section_volume_from_density(args.n, est.value)
    rec = {
        "command": "volume",
        "n": args.n,
        "direction": list(u.entries),
        "volume": vol,
        "density": est.value,
        "density_error": est.error_estimate,
        "lower_bound": volume_lower_bound(args.n),
        "ratio_to_facet": vol / facet_section_volume(args.n),
    }
    cols = ["n", "volume", "density", "density_error", "lower_bound", "ratio_to_facet"]
    return rec, cols, [[rec[c] for c in cols]]


def cmd_density(args):
    u = resolve_direction(args)
    cfg = integration_config(args)
    methods = list(METHODS) if args.method == "all" else [args.method]
    estimates: list[DensityEstimate] = []
    errors = {}
    for m in methods:
        try:
            estimates.append(METHODS[m](u, cfg, args))
        except SimplexSliceError as exc:
            if args.method != "all":
                raise
            errors[m] = f"{type(exc).__name__}: {exc}"
    rec: dict[str, Any] = {"command": "density", "direction": list(u.entries)}
    if args.method != "all":
        rec.update(estimates[0].to_json())
    else:
        rec["estimates"] = [e.to_json() for e in estimates]
        exact = [e.value for e in estimates if e.method != "MonteCarlo"]
        rec["spread"] = max(exact) - min(exact) if exact else None
        mc = [e for e in estimates if e.method == "MonteCarlo"]
        if mc and exact:
            rec["mc_z_score"] = (mc[0].value - exact[0]) / mc[0].error_estimate
        if errors:
            rec["errors"] = errors
    cols = ["method", "value", "error_estimate"]
    return rec, cols, [[e.method, e.value, e.error_estimate] for e in estimates]


def _check_resolution(n):
    if n < 2:
        raise UsageError("--resolution must be at least 2")


def cmd_contour_dump(args):
    _check_resolution(args.resolution)
    if not (math.isfinite(args.xmin) and math.isfinite(args.xmax)) or args.xmin >= args.xmax:
        raise UsageError("need finite --xmin < --xmax")
    u = resolve_direction(args)
    grid = np.linspace(args.xmin, args.xmax, args.resolution)
    samples = contour.trace(u, grid)
    rows = [[s.x, s.y, s.y_prime, s.f_tilde, s.residual_phase] for s in samples]
    rec = {"command": "contour-dump", "direction": list(u.entries),
           "case": contour.domain(u).case_tag.value, "columns": list(CONTOUR_COLUMNS), "rows": rows}
    return rec, list(CONTOUR_COLUMNS), rows


def argand_rows(u: DirectionVector, re_range, im_range, resolution: int):
    """Rows (x, y, |F_u|, arg F_u) on a rectangular grid; poles get the "inf" sentinel."""
    xs = np.linspace(re_range[0], re_range[1], resolution)
    ys = np.linspace(im_range[0], im_range[1], resolution)
    X, Y = np.meshgrid(xs, ys)
    t = (X + 1j * Y).ravel()
    den = np.abs(1.0 + 1j * np.multiply.outer(t, u.array))
    pole = np.min(den, axis=-1) < POLE_RADIUS
    tt = np.where(pole, 0.0, t)
    mod = eval_modulus(u, tt.real, tt.imag)
    arg = np.angle(eval_F(u, tt))
    rows = []
    for x, y, p, m, a in zip(X.ravel(), Y.ravel(), pole, mod, arg):
        rows.append([x, y, POLE_SENTINEL, "nan"] if p else [x, y, m, a])
    return rows


def cmd_argand_grid(args):
    _check_resolution(args.resolution)
    for lo, hi in (args.re_range, args.im_range):
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise UsageError("ranges must be finite with LO < HI")
    u = resolve_direction(args)
    rows = argand_rows(u, args.re_range, args.im_range, args.resolution)
    rec = {"command": "argand-grid", "direction": list(u.entries),
           "columns": list(ARGAND_COLUMNS), "rows": rows}
    return rec, list(ARGAND_COLUMNS), rows


def cmd_verify(args):
    checks = args.check or list(verify.ALL_CHECKS)
    cfg = integration_config(args)
    if args.dir is not None:
        corpus = [parse_direction(args.dir, args.norm_tol)]
    elif args.corpus == "facet":
        if args.nmax < 2:
            raise UsageError("--nmax must be at least 2")
        corpus = [facet_direction(n) for n in range(2, args.nmax + 1)]
    else:
        corpus = verify.build_corpus(args.seed, args.corpus_size)
    reports = verify.run_suite(checks, seed=args.seed, cfg=cfg, corpus=corpus)
    return reports


def _verify_output(reports, fmt) -> str:
    if fmt == "csv":
        cols = ["check_name", "passed", "worst_residual", "tolerance", "worst_location", "grid_spec"]
        rows = [[r.check_name, str(r.passed).lower(), r.worst_residual, r.tolerance,
                 r.worst_location, r.grid_spec] for r in reports]
        return rows_to_csv(cols, rows)
    return "".join(dump_json({"command": "verify", **r.to_json()}) + "\n" for r in reports)


COMMANDS = {
    "volume": (cmd_volume, "json"),
    "density": (cmd_density, "json"),
    "contour-dump": (cmd_contour_dump, "csv"),
    "argand-grid": (cmd_argand_grid, "csv"),
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            reports = cmd_verify(args)
            emit(_verify_output(reports, args.format or "json"), args.out)
            return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK
        fn, default_fmt = COMMANDS[args.command]
        rec, cols, rows = fn(args)
        fmt = args.format or default_fmt
        emit(rows_to_csv(cols, rows) if fmt == "csv" else dump_json(rec) + "\n", args.out)
        return EXIT_OK
    except (UsageError, InputError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, OverflowError, FloatingPointError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
