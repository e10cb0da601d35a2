"""Fit a fractional relaxation model to measured stress-relaxation data.

Loads the wheat-dough tension series (data/wheat_dough.csv), grid-searches
(alpha, A) for the homogeneous model u(0) = 710, and reports the residuals
of the winner.  A coarse pre-pass keeps the demo quick; the full acceptance
sweep lives in tests/test_acceptance.py.
"""

from pathlib import Path

from fro import FroProblem
from fro.dataio import export_trajectory, grid_fit, load_series, residuals
from fro.solver import solve_pece
from fro.service import render_svg

HERE = Path(__file__).parent
OUT = HERE / "output"
OUT.mkdir(exist_ok=True)

series = load_series(HERE.parent / "data" / "wheat_dough.csv")
print(f"loaded {len(series)} points, t in [{series.times[0]:g}, {series.times[-1]:g}] s")

template = FroProblem(alpha=0.5, relax_coeff=1.0, forcing=None,
                      y0=float(series.values[0]), y0_prime=0.0,
                      step=0.02, duration=20.0)

alpha_grid = [0.3, 0.4, 0.45, 0.5, 0.55, 0.6, 0.7]
coeff_grid = [0.15, 0.2, 0.25, 0.3, 0.35, 0.4]
report = grid_fit(series, alpha_grid, coeff_grid, template)

print(f"best fit: alpha = {report.params.alpha:g}, A = {report.params.relax_coeff:g}")
print(f"rmse = {report.rmse:.2f} g, max |residual| = {report.max_abs_error:.2f} g, "
      f"relative rmse = {report.relative_rmse:.4f}")

best = solve_pece(report.params)
check = residuals(best, series)
assert check.rmse == report.rmse
export_trajectory(best, OUT / "wheat_dough_best_fit.csv")
(OUT / "wheat_dough_best_fit.svg").write_text(
    render_svg(best, title=f"alpha={report.params.alpha:g} A={report.params.relax_coeff:g}"))
print(f"best-fit curve written to {OUT}/")
