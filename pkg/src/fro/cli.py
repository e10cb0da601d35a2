"""Command-line interface.

Subcommands::

    fro solve     solve with the predictor-corrector scheme, write a trajectory
    fro analytic  evaluate the Mittag-Leffler closed-form solution instead
    fro ml        evaluate E_{alpha,beta}(z) at one point
    fro fit       exhaustive (alpha, A) grid fit against a CSV data series
    fro converge  empirical convergence order over a ladder of step sizes

Numeric flags default to the standard parameter set (alpha 0.5, A 1, dt 0.1,
duration 10, y0 0, y'0 0, forcing "0").  Data goes to stdout, diagnostics to
stderr; exit status 0 on success, 2 for validation/usage errors, 1 for I/O or
internal failures.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analytic, dataio, solver
from .expressions import ExpressionError, parse_expression
from .special import MittagLefflerDomainError, ml

__all__ = ["DEFAULTS", "build_parser", "run", "main"]

DEFAULTS = {
    "alpha": 0.5,
    "coeff": 1.0,
    "dt": 0.1,
    "duration": 10.0,
    "y0": 0.0,
    "yp0": 0.0,
    "forcing": "0",
}


class _UsageError(Exception):
    def __init__(self, message: str, usage: str):
        super().__init__(message)
        self.usage = usage


class _CliArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems via exception (exit status 2)."""

    def error(self, message):
        raise _UsageError(message, self.format_usage())


def _add_problem_flags(cmd: argparse.ArgumentParser, include_forcing: bool = True) -> None:
    cmd.add_argument("--alpha", type=float, default=DEFAULTS["alpha"],
                     help=f"fractional order in (0, 2] (default: {DEFAULTS['alpha']})")
    cmd.add_argument("--coeff", type=float, default=DEFAULTS["coeff"],
                     help=f"relaxation coefficient A (default: {DEFAULTS['coeff']})")
    cmd.add_argument("--dt", type=float, default=DEFAULTS["dt"],
                     help=f"time step h (default: {DEFAULTS['dt']})")
    cmd.add_argument("--duration", type=float, default=DEFAULTS["duration"],
                     help=f"total duration T (default: {DEFAULTS['duration']})")
    cmd.add_argument("--y0", type=float, default=DEFAULTS["y0"],
                     help=f"initial value u(0) (default: {DEFAULTS['y0']})")
    cmd.add_argument("--yp0", type=float, default=DEFAULTS["yp0"],
                     help=f"initial derivative u'(0), used when alpha > 1 (default: {DEFAULTS['yp0']})")
    if include_forcing:
        cmd.add_argument("--forcing", type=str, default=DEFAULTS["forcing"],
                         help=f"forcing f(t) as an expression in t (default: \"{DEFAULTS['forcing']}\")")


def build_parser() -> argparse.ArgumentParser:
    parser = _CliArgumentParser(prog="fro",
                                description="Fractional relaxation-oscillation equation tools")
    sub = parser.add_subparsers(dest="command", metavar="command")

    for name, help_text in (
        ("solve", "solve numerically (predictor-corrector)"),
        ("analytic", "evaluate the Mittag-Leffler analytic solution"),
    ):
        cmd = sub.add_parser(name, help=help_text, parents=[], add_help=True)
        _add_problem_flags(cmd)
        cmd.add_argument("--out", type=str, default=None,
                         help="output file (default: stdout)")
        cmd.add_argument("--format", choices=("csv", "json"), default="csv",
                         help="output format (default: csv)")

    cmd = sub.add_parser("ml", help="evaluate the Mittag-Leffler function")
    cmd.add_argument("--alpha", type=float, required=True, help="order in (0, 2]")
    cmd.add_argument("--beta", type=float, default=1.0, help="second parameter (default: 1)")
    cmd.add_argument("--z", type=float, required=True, help="argument, z <= 0")

    cmd = sub.add_parser("fit", help="grid fit of (alpha, A) against a data series")
    cmd.add_argument("--data", type=str, required=True, help="CSV file with 'time,value' rows")
    cmd.add_argument("--alpha-grid", type=str, default="0.1:0.95:0.05",
                     help="alpha values: comma list or start:stop:step (default: 0.1:0.95:0.05)")
    cmd.add_argument("--coeff-grid", type=str, default="0.05:3.0:0.05",
                     help="A values: comma list or start:stop:step (default: 0.05:3.0:0.05)")
    cmd.add_argument("--dt", type=float, default=0.01,
                     help="time step for the candidate solves (default: 0.01)")
    cmd.add_argument("--duration", type=float, default=None,
                     help="duration (default: last data time, rounded up to a dt multiple)")
    cmd.add_argument("--y0", type=float, default=None,
                     help="initial value (default: first data value)")

    cmd = sub.add_parser("converge", help="empirical convergence order study")
    _add_problem_flags(cmd, include_forcing=False)
    cmd.add_argument("--steps", type=str, default="1/64,1/128,1/256,1/512",
                     help="comma list of step sizes, fractions allowed "
                          "(default: 1/64,1/128,1/256,1/512)")
    cmd.add_argument("--t-min", type=float, default=0.0,
                     help="measure errors only at t >= this value, skipping the "
                          "startup layer (default: 0)")
    return parser


def _parse_grid(spec: str) -> list[float]:
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec {spec!r} must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        n = int(round((stop - start) / step))
        values = [start + i * step for i in range(n + 1) if start + i * step <= stop + 1e-12]
        return values
    return [float(p) for p in spec.split(",") if p.strip()]


def _parse_steps(spec: str) -> list[float]:
    out = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "/" in part:
            num, den = part.split("/")
            out.append(float(num) / float(den))
        else:
            out.append(float(part))
    return out


def _problem_from_args(args) -> solver.FroProblem:
    forcing_text = getattr(args, "forcing", "0")
    forcing = None if forcing_text.strip() == "0" else parse_expression(forcing_text)
    return solver.FroProblem(
        alpha=args.alpha,
        relax_coeff=args.coeff,
        forcing=forcing,
        y0=args.y0,
        y0_prime=args.yp0,
        step=args.dt,
        duration=args.duration,
    )


def _emit_trajectory(traj, args, stdout) -> None:
    if args.format == "csv":
        text = dataio.render_trajectory_csv(traj)
    else:
        text = dataio.render_trajectory_json(traj)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run(argv, stdout=None, stderr=None) -> int:
    """Execute one CLI invocation; returns the exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(exc.usage)
        print(f"fro: error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help paths
        return 0 if exc.code in (0, None) else 2

    if args.command is None:
        parser.print_usage(stderr)
        print("fro: error: a subcommand is required", file=stderr)
        return 2

    try:
        if args.command == "solve":
            traj = solver.solve_pece(_problem_from_args(args))
            _emit_trajectory(traj, args, stdout)
            return 0
        if args.command == "analytic":
            traj = analytic.analytic_solution(_problem_from_args(args))
            _emit_trajectory(traj, args, stdout)
            return 0
        if args.command == "ml":
            value = ml(args.alpha, args.beta, args.z)
            print(f"{value:.17g}", file=stdout)
            return 0
        if args.command == "fit":
            return _run_fit(args, stdout)
        if args.command == "converge":
            return _run_converge(args, stdout)
        print(f"fro: error: unknown subcommand {args.command!r}", file=stderr)
        return 2
    except (solver.ProblemValidationError, ExpressionError,
            MittagLefflerDomainError, dataio.SeriesFormatError, ValueError) as exc:
        print(f"fro: error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"fro: i/o error: {exc}", file=stderr)
        return 1
    except Exception as exc:  # pragma: no cover - unexpected faults
        print(f"fro: internal error: {exc}", file=stderr)
        return 1


def _run_fit(args, stdout) -> int:
    series = dataio.load_series(args.data)
    alpha_grid = _parse_grid(args.alpha_grid)
    coeff_grid = _parse_grid(args.coeff_grid)
    dt = args.dt
    if args.duration is not None:
        duration = args.duration
    else:
        n = int(np.ceil(series.times[-1] / dt - 1e-9))
        duration = max(n, 1) * dt
    y0 = args.y0 if args.y0 is not None else float(series.values[0])
    template = solver.FroProblem(
        alpha=alpha_grid[0], relax_coeff=coeff_grid[0], forcing=None,
        y0=y0, y0_prime=0.0, step=dt, duration=duration,
    )
    report = dataio.grid_fit(series, alpha_grid, coeff_grid, template)
    doc = {
        "alpha": report.params.alpha,
        "coeff": report.params.relax_coeff,
        "rmse": report.rmse,
        "max_abs_error": report.max_abs_error,
        "relative_rmse": report.relative_rmse,
        "y0": report.params.y0,
        "dt": report.params.step,
        "duration": report.params.duration,
        "n_data_points": len(series),
    }
    stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def _run_converge(args, stdout) -> int:
    steps = _parse_steps(args.steps)
    problem = solver.FroProblem(
        alpha=args.alpha, relax_coeff=args.coeff, forcing=None,
        y0=args.y0, y0_prime=args.yp0, step=steps[0], duration=args.duration,
    )
    estimate = solver.empirical_order(problem, steps, t_min=args.t_min)
    stdout.write("h,max_error\n")
    for h, err in zip(estimate.steps, estimate.max_errors):
        stdout.write(f"{h:.17g},{err:.17g}\n")
    stdout.write(f"slope,{estimate.slope:.6g}\n")
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
