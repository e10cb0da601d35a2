"""Experimental data loading, trajectory export, residuals, and grid fitting.

CSV format: UTF-8, header line ``time,value``, one pair per row, ``#`` comment
lines and blank lines skipped, LF or CRLF accepted (LF written).  Trajectories
export losslessly at 17 significant digits; JSON export carries the problem
echo alongside the arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .expressions import to_string
from .solver import (
    DivergenceError,
    FroProblem,
    ProblemValidationError,
    Trajectory,
    solve_pece,
)

__all__ = [
    "ExperimentalSeries",
    "FitReport",
    "SeriesFormatError",
    "load_series",
    "export_trajectory",
    "residuals",
    "grid_fit",
    "trajectory_meta",
]


class SeriesFormatError(ValueError):
    """Malformed or invalid experimental data."""


@dataclass(frozen=True)
class ExperimentalSeries:
    """Measured (time, value) pairs with strictly increasing times."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise SeriesFormatError("series needs matching 1-d time and value arrays")
        if len(times) < 2:
            raise SeriesFormatError("series needs at least 2 points")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise SeriesFormatError("series contains non-finite entries")
        if np.any(times < 0.0):
            raise SeriesFormatError("series times must be >= 0")
        if np.any(np.diff(times) <= 0.0):
            raise SeriesFormatError("series times must be strictly increasing")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class FitReport:
    """Residual metrics of one model curve against one data series."""

    rmse: float
    max_abs_error: float
    relative_rmse: float
    params: FroProblem


def load_series(path, label: str | None = None) -> ExperimentalSeries:
    """Read an ExperimentalSeries from a CSV file.

    Raises OSError for unreadable files, :class:`SeriesFormatError` (with the
    line number) for malformed content, and the same for series that fail
    validation.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    times: list[float] = []
    values: list[float] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            cols = [c.strip().lower() for c in line.split(",")]
            if cols != ["time", "value"]:
                raise SeriesFormatError(
                    f"{path.name}:{lineno}: expected header 'time,value', got {line!r}"
                )
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise SeriesFormatError(
                f"{path.name}:{lineno}: expected 'time,value' pair, got {line!r}"
            )
        try:
            t = float(parts[0])
            v = float(parts[1])
        except ValueError as exc:
            raise SeriesFormatError(f"{path.name}:{lineno}: not numeric: {line!r}") from exc
        times.append(t)
        values.append(v)
    if not header_seen:
        raise SeriesFormatError(f"{path.name}: missing 'time,value' header")
    try:
        return ExperimentalSeries(
            np.asarray(times), np.asarray(values), label=label if label is not None else path.stem
        )
    except SeriesFormatError as exc:
        raise SeriesFormatError(f"{path.name}: {exc}") from exc


def trajectory_meta(traj: Trajectory) -> dict:
    """JSON-ready echo of the problem and method behind a trajectory."""
    problem = traj.problem
    forcing = problem.forcing
    if forcing is None:
        forcing_text = "0"
    elif isinstance(forcing, str):
        forcing_text = forcing
    elif callable(forcing):
        forcing_text = getattr(forcing, "__name__", "<callable>")
    else:
        forcing_text = to_string(forcing)
    meta = {
        "alpha": problem.alpha,
        "coeff": problem.relax_coeff,
        "dt": problem.step,
        "duration": problem.duration,
        "y0": problem.y0,
        "yp0": problem.y0_prime,
        "forcing": forcing_text,
        "method": traj.method,
        "n_points": traj.grid.n_points,
    }
    if traj.notes:
        meta["notes"] = list(traj.notes)
    return meta


def export_trajectory(traj: Trajectory, path, format: str = "csv") -> None:
    """Write a trajectory as CSV (17 significant digits) or JSON."""
    path = Path(path)
    if format == "csv":
        path.write_text(render_trajectory_csv(traj), encoding="utf-8")
    elif format == "json":
        path.write_text(render_trajectory_json(traj), encoding="utf-8")
    else:
        raise ValueError(f"export_trajectory: unknown format {format!r}")


def render_trajectory_csv(traj: Trajectory) -> str:
    lines = ["time,value"]
    for t, u in zip(traj.times, traj.values):
        lines.append(f"{t:.17g},{u:.17g}")
    return "\n".join(lines) + "\n"


def render_trajectory_json(traj: Trajectory) -> str:
    doc = {
        "meta": trajectory_meta(traj),
        "t": [float(v) for v in traj.times],
        "u": [float(v) for v in traj.values],
    }
    return json.dumps(doc, indent=2) + "\n"


def residuals(traj: Trajectory, series: ExperimentalSeries) -> FitReport:
    """Model-vs-data metrics with the model linearly interpolated to data times.

    Raises ValueError naming the first data time outside [0, duration].
    """
    t_max = traj.times[-1]
    beyond = series.times > t_max * (1.0 + 1e-12)
    if np.any(beyond):
        t_bad = float(series.times[np.argmax(beyond)])
        raise ValueError(
            f"residuals: data time {t_bad:g} lies beyond the trajectory duration {t_max:g}"
        )
    model = np.interp(series.times, traj.times, traj.values)
    with np.errstate(over="ignore"):
        resid = model - series.values
        rmse = float(np.sqrt(np.mean(resid ** 2)))
        max_abs = float(np.max(np.abs(resid)))
        data_rms = float(np.sqrt(np.mean(series.values ** 2)))
    rel = rmse / data_rms if data_rms > 0.0 else math.inf if rmse > 0.0 else 0.0
    return FitReport(rmse=rmse, max_abs_error=max_abs, relative_rmse=rel, params=traj.problem)


def grid_fit(
    series: ExperimentalSeries,
    alpha_grid: Sequence[float],
    coeff_grid: Sequence[float],
    template: FroProblem,
) -> FitReport:
    """Exhaustive search over (alpha, A) pairs for the smallest-rmse PECE fit.

    Every pair is solved with the template's step/duration/initial data; ties
    break toward smaller alpha, then smaller A.  Candidates whose solve
    diverges (the scheme is conditionally stable, so extreme (alpha, A)
    corners can blow up at a fixed step) are skipped: they cannot minimise
    the residual.  All other errors are re-raised tagged with the offending
    grid point.
    """
    if len(alpha_grid) == 0 or len(coeff_grid) == 0:
        raise ValueError("grid_fit: parameter grids must be non-empty")
    if series.times[-1] > template.duration * (1.0 + 1e-12):
        raise ValueError(
            f"grid_fit: template duration {template.duration:g} does not cover "
            f"the last data time {series.times[-1]:g}"
        )
    best: FitReport | None = None
    best_key: tuple | None = None
    n_diverged = 0
    for alpha in alpha_grid:
        for coeff in coeff_grid:
            problem = FroProblem(
                alpha=float(alpha),
                relax_coeff=float(coeff),
                forcing=template.forcing,
                y0=template.y0,
                y0_prime=template.y0_prime,
                step=template.step,
                duration=template.duration,
            )
            try:
                traj = solve_pece(problem)
                report = residuals(traj, series)
            except DivergenceError:
                n_diverged += 1
                continue
            except (ProblemValidationError, ValueError) as exc:
                raise type(exc)(
                    f"grid_fit failed at (alpha={alpha}, coeff={coeff}): {exc}"
                ) from exc
            key = (report.rmse, float(alpha), float(coeff))
            if best_key is None or key < best_key:
                best = report
                best_key = key
    if best is None:
        raise DivergenceError(
            f"grid_fit: all {n_diverged} grid points diverged at step {template.step:g}"
        )
    return best
