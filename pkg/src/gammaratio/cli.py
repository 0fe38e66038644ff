"""Command-line front end.

Usage:
    gammaratio eval g 2 1                 # one kernel value
    gammaratio eval digamma 0.5 --format json
    gammaratio bounds 2 1                 # both sides of the inequality
    gammaratio verify all -o report.json  # every check on the default grids
    gammaratio sweep h --x-count 50 -o h.csv

Exit codes: 0 success or pass, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import csv
import dataclasses
import functools
import io
import json
import sys

import click

from . import kernels, ratio, verify
from .kernels import DomainPoint
from .specfun import EXTENDED, NATIVE, DomainError

__all__ = ["main"]


def _fmt(value) -> str:
    """17 significant digits: enough to round-trip a double."""
    return format(float(value), ".17g")


def _two_arg(fn):
    return lambda args, arith: fn(DomainPoint(*args), arith)


# name -> (arity, evaluator(args, arith))
EVAL_FUNCTIONS = {
    "log_gamma": (1, lambda a, ar: ar.log_gamma(a[0])),
    "digamma": (1, lambda a, ar: ar.digamma(a[0])),
    "trigamma": (1, lambda a, ar: ar.trigamma(a[0])),
    "tetragamma": (1, lambda a, ar: ar.tetragamma(a[0])),
    "v_inv_sqrt2": (1, lambda a, ar: kernels.v_at_inv_sqrt2(a[0], ar)),
    "f": (2, _two_arg(kernels.f)),
    "g": (2, _two_arg(kernels.g)),
    "h": (2, _two_arg(kernels.h)),
    "u": (2, _two_arg(kernels.u)),
    "v": (2, _two_arg(kernels.v)),
    "dg_dy": (2, _two_arg(kernels.dg_dy)),
    "dh_dx": (2, _two_arg(kernels.dh_dx_closed)),
    "du_dx": (2, _two_arg(kernels.du_dx_closed)),
    "dv_dx": (2, _two_arg(kernels.dv_dx_closed)),
    "ratio": (2, _two_arg(ratio.normalized_ratio)),
}
SWEEP_FUNCTIONS = [name for name, (arity, _) in EVAL_FUNCTIONS.items() if arity == 2]

FORMATS = click.Choice(["text", "json", "csv"])


def _fail(message: str, code: int = 2):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _write_text(path: str, text: str):
    if path == "-":
        click.echo(text, nl=False)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Gamma-ratio inequality: special functions, bounds and verification sweeps."""


# -- eval -------------------------------------------------------------------


@main.command("eval", context_settings={"ignore_unknown_options": True})
@click.argument("function", type=click.Choice(list(EVAL_FUNCTIONS)))
@click.argument("args", nargs=-1, type=float)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--extended", is_flag=True, help="Evaluate in extended precision, print the rounded double.")
def eval_cmd(function, args, fmt, extended):
    """Evaluate FUNCTION at z (one argument) or at x y (two arguments)."""
    arity, fn = EVAL_FUNCTIONS[function]
    if len(args) != arity:
        raise click.UsageError(f"{function} takes {arity} argument(s), got {len(args)}")
    try:
        value = fn(args, EXTENDED if extended else NATIVE)
    except DomainError as exc:
        _fail(str(exc))

    if fmt == "json":
        click.echo(json.dumps({"function": function, "args": list(args), "value": float(value)}))
    elif fmt == "csv":
        row = {"function": function, "x": "", "y": "", "z": "", "value": _fmt(value)}
        if arity == 1:
            row["z"] = _fmt(args[0])
        else:
            row["x"], row["y"] = _fmt(args[0]), _fmt(args[1])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["function", "x", "y", "z", "value"], lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        click.echo(buf.getvalue(), nl=False)
    else:
        shown = ", ".join(format(a, "g") for a in args)
        click.echo(f"{function}({shown}) = {_fmt(value)}")


# -- bounds -----------------------------------------------------------------


def verdict_to_dict(v: ratio.BoundVerdict) -> dict:
    return {
        "x": float(v.point.x),
        "y": float(v.point.y),
        "lhs": float(v.lhs),
        "rhs": float(v.rhs),
        "guo_qi_lower": float(v.guo_qi_lower),
        "margin": float(v.margin),
        "log_margin": float(v.log_margin),
        "expected_order": v.expected_order.value,
        "pass": v.passed,
    }


@main.command("bounds", context_settings={"ignore_unknown_options": True})
@click.argument("x", type=float)
@click.argument("y", type=float)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
def bounds_cmd(x, y, fmt):
    """Both sides of the ratio inequality at (X, Y) plus the Guo-Qi lower bound."""
    try:
        verdict = ratio.envelope(DomainPoint(x, y))
    except DomainError as exc:
        _fail(str(exc))
    row = verdict_to_dict(verdict)
    if fmt == "json":
        click.echo(json.dumps(row))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(row))
        writer.writerow([_fmt(v) if isinstance(v, float) else str(v).lower() for v in row.values()])
        click.echo(buf.getvalue(), nl=False)
    else:
        for key, value in row.items():
            if key == "pass":
                value = "pass" if value else "FAIL"
            elif isinstance(value, float):
                value = _fmt(value)
            click.echo(f"{key:<15} {value}")
    sys.exit(0 if verdict.passed else 1)


# -- shared grid flags ------------------------------------------------------

_G = verify.GridSpec()


def grid_options(fn):
    spacing = click.Choice([s.value for s in verify.Spacing])
    opts = [
        click.option("--x-min", type=float, default=_G.x_min, show_default=True),
        click.option("--x-max", type=float, default=_G.x_max, show_default=True),
        click.option("--y-min", type=float, default=_G.y_min, show_default=True),
        click.option("--y-max", type=float, default=_G.y_max, show_default=True),
        click.option("--x-count", type=int, default=_G.x_count, show_default=True),
        click.option("--y-count", type=int, default=_G.y_count, show_default=True),
        click.option("--x-spacing", type=spacing, default=_G.x_spacing.value, show_default=True),
        click.option("--y-spacing", type=spacing, default=_G.y_spacing.value, show_default=True),
        click.option(
            "--x-exclusion",
            "x_exclusion_half_width",
            type=float,
            default=_G.x_exclusion_half_width,
            show_default=True,
            help="Half-width of the band around x = 1 skipped by strict-sign checks.",
        ),
        click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True),
    ]

    @functools.wraps(fn)
    def wrapper(**kwargs):
        fields = {f.name for f in dataclasses.fields(verify.GridSpec)}
        grid_kwargs = {k: kwargs.pop(k) for k in list(kwargs) if k in fields}
        try:
            grid = verify.GridSpec(**grid_kwargs)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from None
        return fn(grid=grid, **kwargs)

    for opt in reversed(opts):
        wrapper = opt(wrapper)
    return wrapper


# -- verify -----------------------------------------------------------------

CSV_COLUMNS = [
    "check_name",
    "points_tested",
    "violations",
    "min_margin",
    "argmin_x",
    "argmin_y",
    "elapsed_ms",
    "pass",
]


def _domain_dict(grid):
    if grid is None:
        return None
    out = {"kind": "grid" if isinstance(grid, verify.GridSpec) else "axis"}
    for key, value in dataclasses.asdict(grid).items():
        out[key] = value.value if isinstance(value, verify.Spacing) else value
    return out


def report_to_dict(r: verify.CheckReport, timings: bool = False) -> dict:
    return {
        "check_name": r.check_name,
        "grid": _domain_dict(r.grid),
        "points_tested": r.points_tested,
        "violations": r.violations,
        "min_margin": r.min_margin,
        "argmin": list(r.argmin) if r.argmin is not None else None,
        "elapsed_ms": round(r.elapsed * 1000, 3) if timings else None,
        "pass": r.passed,
    }


def reports_to_json(reports, timings: bool = False) -> str:
    doc = {
        "pass": all(r.passed for r in reports),
        "reports": [report_to_dict(r, timings) for r in reports],
    }
    return json.dumps(doc, indent=2) + "\n"


def reports_to_csv(reports, timings: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        argmin = list(r.argmin or ())
        writer.writerow(
            [
                r.check_name,
                r.points_tested,
                r.violations,
                "" if r.min_margin is None else _fmt(r.min_margin),
                _fmt(argmin[0]) if len(argmin) > 0 else "",
                _fmt(argmin[1]) if len(argmin) > 1 else "",
                f"{r.elapsed * 1000:.3f}" if timings else "",
                "true" if r.passed else "false",
            ]
        )
    return buf.getvalue()


def _summary(r: verify.CheckReport) -> str:
    status = "PASS" if r.passed else "FAIL"
    margin = "n/a" if r.min_margin is None else format(r.min_margin, ".6g")
    where = "" if r.argmin is None else " at (" + ", ".join(format(c, ".6g") for c in r.argmin) + ")"
    return (
        f"{status} {r.check_name}: points={r.points_tested} violations={r.violations} "
        f"min_margin={margin}{where} [{r.elapsed * 1000:.0f} ms]"
    )


@main.command("verify")
@click.argument("check", type=click.Choice(["all", *verify.CHECK_NAMES]))
@grid_options
@click.option("--fd-step", type=float, default=verify.FDConfig.step, show_default=True)
@click.option("--fd-rtol", type=float, default=verify.FDConfig.relative_tolerance, show_default=True)
@click.option("--fd-atol", type=float, default=verify.FDConfig.absolute_tolerance, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False, writable=True), help="Report file.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), help="Report format [default: from suffix, else json].")
@click.option("--timings", is_flag=True, help="Record elapsed times in the report file (breaks byte-identical output).")
def verify_cmd(check, grid, threads, fd_step, fd_rtol, fd_atol, output, fmt, timings):
    """Run CHECK (or all checks) and report violations and margins."""
    try:
        fd = verify.FDConfig(step=fd_step, relative_tolerance=fd_rtol, absolute_tolerance=fd_atol)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    config = verify.VerifyConfig(grid=grid, fd=fd, threads=threads)
    names = verify.CHECK_NAMES if check == "all" else (check,)
    reports = []
    try:
        for name in names:
            report = verify.run_check(name, config)
            click.echo(_summary(report))
            reports.append(report)
    except DomainError as exc:
        _fail(str(exc))

    if output:
        if fmt is None:
            fmt = "csv" if output.lower().endswith(".csv") else "json"
        text = reports_to_csv(reports, timings) if fmt == "csv" else reports_to_json(reports, timings)
        _write_text(output, text)
    sys.exit(0 if all(r.passed for r in reports) else 1)


# -- sweep ------------------------------------------------------------------


@main.command("sweep")
@click.argument("function", type=click.Choice(SWEEP_FUNCTIONS))
@grid_options
@click.option("-o", "--output", default="-", show_default=True, type=click.Path(dir_okay=False, allow_dash=True))
def sweep_cmd(function, grid, threads, output):
    """Tabulate FUNCTION over the grid as CSV with columns x, y, value (y-major)."""
    _, fn = EVAL_FUNCTIONS[function]
    points = grid.points()
    try:
        values = verify.map_ordered(lambda p: fn((p.x, p.y), NATIVE), points, threads)
    except DomainError as exc:
        _fail(str(exc))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "value"])
    for p, value in zip(points, values):
        writer.writerow([_fmt(p.x), _fmt(p.y), _fmt(value)])
    _write_text(output, buf.getvalue())


if __name__ == "__main__":
    main()
