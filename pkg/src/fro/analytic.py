"""Closed-form reference solutions built from Mittag-Leffler functions.

For the homogeneous part the solution is

    u(t) = y0 E_{alpha,1}(-A t^alpha)                          (0 < alpha <= 1)
    u(t) = y0 E_{alpha,1}(-A t^alpha)
           + y0' t E_{alpha,2}(-A t^alpha)                     (1 < alpha <= 2)

and the forced part is the convolution of the Green function

    G(t) = t^(alpha-1) E_{alpha,alpha}(-A t^alpha)

with f.  The convolution is computed by product integration: f is taken
piecewise-linear on each grid panel and the kernel is integrated with
32-point Gauss-Legendre quadrature, the first panel after the substitution
tau = h s^(1/alpha) which removes the t^(alpha-1) endpoint singularity.
This keeps the reference at least two orders more accurate than the
predictor-corrector scheme it is used to validate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .solver import FroProblem, TimeGrid, Trajectory, forcing_values, validate
from .special import ml

__all__ = [
    "GreenFunction",
    "green",
    "relaxation_solution",
    "oscillation_solution",
    "analytic_solution",
    "solution_values",
]

_GAUSS_POINTS = 32


@dataclass(frozen=True)
class GreenFunction:
    """Kernel parameters: order alpha in (0, 2], coefficient A >= 0."""

    alpha: float
    relax_coeff: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise ValueError(f"GreenFunction: alpha = {self.alpha!r} outside (0, 2]")
        if not (self.relax_coeff >= 0.0):
            raise ValueError(f"GreenFunction: relax_coeff = {self.relax_coeff!r} must be >= 0")


def green(gf: GreenFunction, t):
    """Green function t^(alpha-1) E_{alpha,alpha}(-A t^alpha) for t > 0.

    Raises ValueError at t <= 0 (integrable singularity for alpha < 1).
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("green: requires t > 0")
    a = gf.alpha
    vals = arr ** (a - 1.0) * ml(a, a, -gf.relax_coeff * arr ** a)
    return float(vals) if arr.ndim == 0 else vals


def _gauss_rule():
    nodes, weights = np.polynomial.legendre.leggauss(_GAUSS_POINTS)
    # map from [-1, 1] to [0, 1]
    return 0.5 * (nodes + 1.0), 0.5 * weights


def _panel_moments(alpha: float, a_coeff: float, h: float, n_panels: int):
    """Product-integration moments of the Green kernel against the two linear
    hat pieces on every panel [t_m, t_{m+1}].

    Returns (a_m, b_m) such that

        integral over panel m of G(sigma) f(t_n - sigma) dsigma
            ~= a_m * f_{n-m-1} + b_m * f_{n-m}

    when f is linear on the panel.  Independent of n, so computed once.
    """
    s, w = _gauss_rule()
    a_m = np.empty(n_panels)
    b_m = np.empty(n_panels)

    # first panel: sigma = h * s^(1/alpha) turns G's sigma^(alpha-1) dsigma
    # into (h^alpha/alpha) ds exactly
    xi0 = s ** (1.0 / alpha)
    kern0 = (h ** alpha / alpha) * ml(alpha, alpha, -a_coeff * (h ** alpha) * s)
    a_m[0] = np.sum(w * kern0 * xi0)
    b_m[0] = np.sum(w * kern0 * (1.0 - xi0))

    if n_panels > 1:
        m = np.arange(1, n_panels, dtype=float)[:, None]
        sigma = (m + s[None, :]) * h
        kern = sigma ** (alpha - 1.0) * ml(alpha, alpha, -a_coeff * sigma ** alpha)
        a_m[1:] = h * (kern * s[None, :]) @ w
        b_m[1:] = h * (kern * (1.0 - s[None, :])) @ w
    return a_m, b_m


def _convolution(problem: FroProblem, times: np.ndarray) -> np.ndarray:
    """(G * f)(t_n) on the uniform grid by product integration."""
    f_vals = forcing_values(problem, times)
    n = len(times) - 1
    out = np.zeros(n + 1)
    if n == 0 or not np.any(f_vals):
        return out
    h = float(times[1] - times[0])
    a_m, b_m = _panel_moments(problem.alpha, problem.relax_coeff, h, n)
    # reversed copy: frev[n - j] = f_j, so frev[n-size..] aligns lag order
    frev = f_vals[::-1].copy()
    for idx in range(1, n + 1):
        # sum over panels m = 0..idx-1 of a_m f_{idx-1-m} + b_m f_{idx-m}
        out[idx] = a_m[:idx] @ frev[n - idx + 1:] + b_m[:idx] @ frev[n - idx: n]
    return out


def solution_values(problem: FroProblem, times: np.ndarray) -> np.ndarray:
    """Analytic solution sampled on an arbitrary uniform time grid."""
    a = problem.alpha
    coeff = problem.relax_coeff
    times = np.asarray(times, dtype=float)
    z = -coeff * times ** a
    u = problem.y0 * ml(a, 1.0, z)
    if a > 1.0:
        u = u + problem.y0_prime * times * ml(a, 2.0, z)
    if problem.forcing is not None:
        u = u + _convolution(problem, times)
    return u


def _build_trajectory(problem: FroProblem, grid: TimeGrid | None) -> Trajectory:
    validate(problem)
    if grid is None:
        grid = TimeGrid.build(problem.step, problem.n_steps())
    values = solution_values(problem, grid.times)
    values.setflags(write=False)
    return Trajectory(grid=grid, values=values, method="analytic", problem=problem)


def relaxation_solution(problem: FroProblem, grid: TimeGrid | None = None) -> Trajectory:
    """Analytic solution in the relaxation regime 0 < alpha <= 1."""
    if not (0.0 < problem.alpha <= 1.0):
        raise ValueError(
            f"relaxation_solution: alpha = {problem.alpha!r} outside (0, 1]; "
            "use oscillation_solution for alpha > 1"
        )
    return _build_trajectory(problem, grid)


def oscillation_solution(problem: FroProblem, grid: TimeGrid | None = None) -> Trajectory:
    """Analytic solution in the oscillation regime 1 < alpha <= 2."""
    if not (1.0 < problem.alpha <= 2.0):
        raise ValueError(
            f"oscillation_solution: alpha = {problem.alpha!r} outside (1, 2]; "
            "use relaxation_solution for alpha <= 1"
        )
    return _build_trajectory(problem, grid)


def analytic_solution(problem: FroProblem, grid: TimeGrid | None = None) -> Trajectory:
    """Regime-dispatching convenience wrapper."""
    if problem.alpha <= 1.0:
        return relaxation_solution(problem, grid)
    return oscillation_solution(problem, grid)
