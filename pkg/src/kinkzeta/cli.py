"""Command-line front end.

Usage::

    kinkzeta correction --n 1 --b 1 --lambda 4 --d 1 --M 1
    kinkzeta kink --m 1 --g 1 --d 1 --M 1 --format json
    kinkzeta zeta --n 2 --b 1 --lambda 5 --d 3 --s 0.3 --rep hypergeometric
    kinkzeta trace --n 2 --b 1 --t-min 0.05 --t-max 5 --points 50 --format csv
    kinkzeta verify --suite all --paper-compare
    kinkzeta sweep --m 1 --g 1 --d 1..4 --M 1

Units: hbar = 1; masses and lengths in units of the input parameters.
Exit codes: 0 success, 1 numerical failure or failed verification,
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

from kinkzeta import heatkernel, verification, zeta
from kinkzeta.errors import (
    ConvergenceError,
    DomainError,
    InvalidSpecError,
    PoleError,
    UnsupportedError,
)
from kinkzeta.model import OperatorSpec, Phi4Params, spec_from_kink

INPUT_ERRORS = (InvalidSpecError, DomainError, PoleError, UnsupportedError)

RESULT_COLUMNS = ["n", "b", "lambda", "d", "M", "zeta0", "dzeta0", "delta_epsilon"]


class UsageError(Exception):
    """Malformed command-line input (exit 2)."""


def fmt_csv(x) -> str:
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.16e}"


def write_csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_csv(x) if not isinstance(x, str) else x for x in row])
    return buf.getvalue()


def _spec_from_args(args) -> OperatorSpec:
    return OperatorSpec(n=args.n, b=args.b, lam=args.lam, d=args.d, M=args.M)


def _correction_row(c: zeta.Correction) -> list:
    s = c.spec
    return [s.n, s.b, s.lam, s.d, s.M, c.zeta_zero, c.zeta_prime_zero, c.delta_epsilon]


def _render_correction(c: zeta.Correction, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(c.as_dict(), indent=2) + "\n"
    if fmt == "csv":
        return write_csv([_correction_row(c) + [c.representation.value, c.abs_error_estimate]],
                         RESULT_COLUMNS + ["representation", "err_est"])
    s = c.spec
    return (
        f"spec: n={s.n} b={s.b!r} lambda={s.lam!r} d={s.d} M={s.M!r}\n"
        f"zeta(0)        = {c.zeta_zero!r}\n"
        f"zeta'(0)       = {c.zeta_prime_zero!r}\n"
        f"delta_epsilon  = {c.delta_epsilon!r}\n"
        f"representation = {c.representation.value} (err_est {c.abs_error_estimate:.3g})\n"
    )


def cmd_correction(args) -> int:
    c = zeta.mass_correction(_spec_from_args(args))
    sys.stdout.write(_render_correction(c, args.format))
    return 0


def cmd_kink(args) -> int:
    c = zeta.kink_correction(args.m, args.g, args.d, args.M)
    sys.stdout.write(_render_correction(c, args.format))
    return 0


REPS = {
    "integral": zeta.zeta_integral_rep,
    "hypergeometric": zeta.zeta_hyp_rep,
    "mellin": zeta.zeta_mellin_numeric,
}


def cmd_zeta(args) -> int:
    spec = _spec_from_args(args)
    v = REPS[args.rep](args.s, spec)
    if args.format == "json":
        out = {"spec": spec.as_dict(), "s": v.s, "value": v.value,
               "provenance": {"representation": v.representation.value,
                              "err_est": v.abs_error_estimate}}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write(write_csv(
            [[spec.n, spec.b, spec.lam, spec.d, spec.M, v.s, v.value, v.representation.value,
              v.abs_error_estimate]],
            ["n", "b", "lambda", "d", "M", "s", "zeta", "representation", "err_est"]))
    else:
        sys.stdout.write(
            f"zeta({v.s!r}) = {v.value!r}  [{v.representation.value}, err_est {v.abs_error_estimate:.3g}]\n"
        )
    return 0


TRACE_KINDS = {"gamma0": "gamma0", "gamma-full": "gamma_full", "free-density": "free_density"}


def cmd_trace(args) -> int:
    lam = args.lam if args.lam is not None else args.n**2 * args.b**2
    spec = OperatorSpec(args.n, args.b, lam, args.d, args.M)
    ts = heatkernel.log_spaced(args.t_min, args.t_max, args.points)
    curve = heatkernel.sample_trace(TRACE_KINDS[args.kind], spec, ts)
    if args.format == "json":
        sys.stdout.write(curve.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(curve.to_csv())
    else:
        lines = [f"# {curve.kind.value}  n={args.n} b={args.b!r} lambda={lam!r} d={args.d}"]
        lines += [f"{t:.16e}  {v:.16e}" for t, v in curve.samples]
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    report = verification.run_suites([args.suite], paper_compare=args.paper_compare)
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.passed else 1


def parse_range(text: str, kind=float) -> list:
    """``"1..4"`` (inclusive integer range), ``"1.0,1.1,1.2"`` or a single value."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            values = list(range(int(lo), int(hi) + 1))
            values = [kind(v) for v in values]
        else:
            values = [kind(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"malformed range {text!r}") from exc
    if not values:
        raise UsageError(f"empty range {text!r}")
    return values


def _int_value(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ValueError(text)
    return int(value)


def sweep_specs(args) -> list[OperatorSpec]:
    ds = parse_range(args.d, _int_value)
    Ms = parse_range(args.M, float)
    if args.m is not None:
        ms = parse_range(args.m, float)
        gs = parse_range(args.g, float)
        return [spec_from_kink(Phi4Params(m, g), d, M)
                for m, g, d, M in itertools.product(ms, gs, ds, Ms)]
    if args.n is None or args.b is None:
        raise UsageError("sweep needs either --m/--g or --n/--b")
    if (args.lam is None) == (args.lambda_scale is None):
        raise UsageError("give exactly one of --lambda / --lambda-scale")
    ns = parse_range(args.n, _int_value)
    bs = parse_range(args.b, float)
    lam_values = parse_range(args.lam if args.lam is not None else args.lambda_scale, float)
    specs = []
    for n, b, lv, d, M in itertools.product(ns, bs, lam_values, ds, Ms):
        lam = lv if args.lam is not None else lv * n * n * b * b
        specs.append(OperatorSpec(n, b, lam, d, M))
    return specs


def cmd_sweep(args) -> int:
    # every spec is built (and validated) before anything is printed
    specs = sweep_specs(args)
    results = [zeta.mass_correction(s) for s in specs]
    if args.format == "json":
        sys.stdout.write(json.dumps([c.as_dict() for c in results], indent=2) + "\n")
    else:
        sys.stdout.write(write_csv([_correction_row(c) for c in results], RESULT_COLUMNS))
    return 0


def _add_spec_args(p: argparse.ArgumentParser, lam_required: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="number of bound levels")
    p.add_argument("--b", type=float, required=True, help="inverse width of the well")
    p.add_argument("--lambda", dest="lam", type=float, required=lam_required,
                   help="mass shift lambda >= n^2 b^2")
    p.add_argument("--d", type=int, default=1, help="space dimension")
    p.add_argument("--M", type=float, default=1.0, help="mass scale")


def _add_format(p: argparse.ArgumentParser, default: str = "text", choices=("text", "json", "csv")):
    p.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kinkzeta",
        description="One-loop corrections to phi^4 kinks via the spectral zeta function "
                    "(units with hbar = 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correction", help="zeta(0), zeta'(0) and delta_epsilon for an operator")
    _add_spec_args(p)
    _add_format(p)
    p.set_defaults(func=cmd_correction)

    p = sub.add_parser("kink", help="correction around the phi^4 kink")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--M", type=float, default=1.0)
    _add_format(p)
    p.set_defaults(func=cmd_kink)

    p = sub.add_parser("zeta", help="zeta_D(s) in a chosen representation")
    _add_spec_args(p)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--rep", choices=sorted(REPS), default="integral")
    _add_format(p)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("trace", help="tabulate a heat-trace function on log-spaced t")
    _add_spec_args(p, lam_required=False)
    p.add_argument("--kind", choices=sorted(TRACE_KINDS), default="gamma0")
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    _add_format(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="run the oracle cross-check suites")
    p.add_argument("--suite", choices=[*verification.SUITES, "all"], default="all")
    p.add_argument("--paper-compare", action="store_true",
                   help="append the published kink values for d=1..4 (informational only)")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="corrections over a parameter grid, one CSV row per spec")
    p.add_argument("--m", help="kink mass(es); selects kink mode")
    p.add_argument("--g", default="1")
    p.add_argument("--n")
    p.add_argument("--b")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--lambda-scale", help="lambda in units of n^2 b^2")
    p.add_argument("--d", default="1", help="e.g. 1..4 or 1,3")
    p.add_argument("--M", default="1")
    _add_format(p, default="csv", choices=("csv", "json"))
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, *INPUT_ERRORS) as exc:
        sys.stderr.write(f"kinkzeta: error: {exc}\n")
        return 2
    except (ConvergenceError, ArithmeticError) as exc:
        sys.stderr.write(f"kinkzeta: numerical failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
