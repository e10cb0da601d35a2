"""Predictor-corrector (PECE) solver for fractional relaxation-oscillation problems.

The initial value problem is

    D^alpha u(t) + A u(t) = f(t),   u(0) = y0,  u'(0) = y0_prime (alpha > 1),

with the Caputo derivative of order 0 < alpha <= 2.  Rewritten as a Volterra
integral equation, each step predicts with rectangle-rule quadrature weights
and corrects once with trapezoid-rule weights; the achievable accuracy is
O(h^q) with q = min(2, 1 + alpha).

History sums are evaluated directly, so a solve with N steps costs O(N^2).
That is intentional: horizons in this problem domain are short and the direct
sums keep the scheme bit-reproducible.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .expressions import EvaluationError, Expression, evaluate, parse_expression
from .special import gamma

__all__ = [
    "FroProblem",
    "TimeGrid",
    "Trajectory",
    "ProblemValidationError",
    "DivergenceError",
    "ReferenceUnavailableError",
    "OrderEstimate",
    "validate",
    "validation_error",
    "predictor_weight",
    "corrector_weight",
    "rhs",
    "solve_pece",
    "empirical_order",
]

# solves beyond this many steps are refused; above the soft cap they warn
STEP_HARD_CAP = 1_000_000
STEP_SOFT_CAP = 100_000

ForcingLike = Union[Expression, Callable, None]


class ProblemValidationError(ValueError):
    """Problem rejected before solving; `kind` names the failed check."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class DivergenceError(ArithmeticError):
    """The numerical solution exceeded the overflow guard."""


class ReferenceUnavailableError(ValueError):
    """No closed form or analytic oracle exists for the requested problem."""


@dataclass(frozen=True)
class FroProblem:
    """Complete specification of one solve.

    Attributes
    ----------
    alpha : float
        Fractional derivative order, 0 < alpha <= 2.
    relax_coeff : float
        Relaxation coefficient A multiplying u(t).
    forcing : Expression, callable, or None
        External source f(t); None means f == 0.  A callable must accept a
        numpy array of times.
    y0 : float
        Initial value u(0).
    y0_prime : float
        Initial derivative u'(0); consulted only when alpha > 1.
    step : float
        Grid spacing h.
    duration : float
        Total duration T; T/h must be a positive integer.
    """

    alpha: float
    relax_coeff: float = 1.0
    forcing: ForcingLike = None
    y0: float = 0.0
    y0_prime: float = 0.0
    step: float = 0.1
    duration: float = 10.0

    def n_steps(self) -> int:
        return int(round(self.duration / self.step))

    def with_step(self, step: float) -> "FroProblem":
        return replace(self, step=step)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_n = n h, n = 0..N."""

    step: float
    n_points: int
    times: np.ndarray = field(repr=False, compare=False, default=None)

    @staticmethod
    def build(step: float, n_steps: int) -> "TimeGrid":
        times = step * np.arange(n_steps + 1)
        times.setflags(write=False)
        return TimeGrid(step=step, n_points=n_steps + 1, times=times)


@dataclass(frozen=True)
class Trajectory:
    """Solution curve on a grid, tagged with the method that produced it."""

    grid: TimeGrid
    values: np.ndarray
    method: str  # "pece" or "analytic"
    problem: FroProblem
    notes: tuple = ()

    @property
    def times(self) -> np.ndarray:
        return self.grid.times


def validation_error(problem: FroProblem) -> Optional[ProblemValidationError]:
    """Return the first invariant violation, or None if the problem is valid."""
    a = problem.alpha
    if not (0.0 < a <= 2.0):  # NaN fails this chain too
        return ProblemValidationError(
            "order-out-of-range",
            f"fractional order alpha = {a!r} must lie within (0, 2]",
        )
    if not math.isfinite(problem.relax_coeff):
        return ProblemValidationError(
            "non-finite-parameter", f"relaxation coefficient is not finite: {problem.relax_coeff!r}"
        )
    for name in ("y0", "y0_prime"):
        v = getattr(problem, name)
        if not math.isfinite(v):
            return ProblemValidationError(
                "non-finite-parameter", f"initial condition {name} is not finite: {v!r}"
            )
    if not (problem.step > 0.0) or math.isinf(problem.step):
        return ProblemValidationError(
            "non-positive-step", f"time step h = {problem.step!r} must be positive"
        )
    if not (problem.duration > 0.0) or math.isinf(problem.duration):
        return ProblemValidationError(
            "non-positive-duration", f"duration T = {problem.duration!r} must be positive"
        )
    ratio = problem.duration / problem.step
    n = round(ratio)
    if n < 1 or abs(ratio - n) > 1e-9 * max(1.0, abs(ratio)):
        return ProblemValidationError(
            "non-integer-step-count",
            f"duration/step = {ratio!r} is not a positive integer number of steps",
        )
    if n > STEP_HARD_CAP:
        return ProblemValidationError(
            "step-count-too-large", f"N = {n} steps exceeds the cap of {STEP_HARD_CAP}"
        )
    return None


def validate(problem: FroProblem) -> None:
    """Raise :class:`ProblemValidationError` unless all invariants hold."""
    err = validation_error(problem)
    if err is not None:
        raise err


def predictor_weight(j: int, k: int, alpha: float, h: float) -> float:
    """Rectangle-rule history weight b_{j,k+1} for 0 <= j <= k."""
    if not 0 <= j <= k:
        raise ValueError(f"predictor_weight: need 0 <= j <= k, got j={j}, k={k}")
    return h ** alpha / alpha * ((k + 1 - j) ** alpha - (k - j) ** alpha)


def corrector_weight(j: int, k: int, alpha: float, h: float) -> float:
    """Trapezoid-rule history weight a_{j,k+1} for 0 <= j <= k+1."""
    if not 0 <= j <= k + 1:
        raise ValueError(f"corrector_weight: need 0 <= j <= k+1, got j={j}, k={k}")
    c = h ** alpha / (alpha * (alpha + 1.0))
    if j == 0:
        return c * (k ** (alpha + 1.0) - (k - alpha) * (k + 1) ** alpha)
    if j == k + 1:
        return c
    m = k - j
    return c * ((m + 2) ** (alpha + 1.0) + m ** (alpha + 1.0) - 2.0 * (m + 1) ** (alpha + 1.0))


def forcing_values(problem: FroProblem, times: np.ndarray) -> np.ndarray:
    """Evaluate the problem's forcing on an array of times (zeros if absent)."""
    f = problem.forcing
    if f is None:
        return np.zeros_like(times)
    if isinstance(f, str):
        f = parse_expression(f)
    if callable(f):
        return np.asarray(f(times), dtype=float) * np.ones_like(times)
    try:
        return evaluate(f, times)
    except EvaluationError as exc:
        t_bad = _first_bad_time(f, times)
        raise EvaluationError(
            f"{exc.args[0]}; forcing failed at t = {t_bad:g}", exc.subexpr
        ) from exc


def _first_bad_time(expr: Expression, times: np.ndarray) -> float:
    for t in times:
        try:
            evaluate(expr, float(t))
        except EvaluationError:
            return float(t)
    return float("nan")


def rhs(problem: FroProblem, t: float, y: float) -> float:
    """Right-hand side f(t) - A*y of the first-order restatement."""
    if t < 0:
        raise ValueError(f"rhs: t = {t!r} must be non-negative")
    f_t = float(forcing_values(problem, np.asarray([t], dtype=float))[0])
    return f_t - problem.relax_coeff * y


def _taylor_head(problem: FroProblem, times: np.ndarray) -> np.ndarray:
    """Initial-condition polynomial: y0, plus t*y0' when alpha > 1."""
    if problem.alpha > 1.0:
        return problem.y0 + times * problem.y0_prime
    return np.full_like(times, problem.y0)


def solve_pece(problem: FroProblem) -> Trajectory:
    """Solve by one predictor pass and one corrector pass per step.

    Returns the corrected trajectory.  Raises
    :class:`ProblemValidationError` for invalid problems and
    :class:`DivergenceError` if any |u(t_k)| exceeds 1e300.
    """
    validate(problem)
    n = problem.n_steps()
    if n > STEP_SOFT_CAP:
        warnings.warn(
            f"solve_pece: N = {n} steps implies O(N^2) history cost; this will be slow",
            RuntimeWarning,
            stacklevel=2,
        )
    h = problem.step
    alpha = problem.alpha
    a_coeff = problem.relax_coeff
    grid = TimeGrid.build(h, n)
    times = grid.times

    notes = ()
    if alpha <= 1.0 and problem.y0_prime != 0.0:
        notes = (
            "y0_prime is ignored for alpha <= 1; the problem needs only u(0)",
        )

    f_vals = forcing_values(problem, times)
    head = _taylor_head(problem, times)

    # quadrature weight tables, indexed by lag m = k - j
    m = np.arange(n, dtype=float)
    h_alpha = h ** alpha
    c_pred = h_alpha / gamma(alpha + 1.0)
    c_corr = h_alpha / gamma(alpha + 2.0)
    db = (m + 1.0) ** alpha - m ** alpha
    d2 = (m + 2.0) ** (alpha + 1.0) + m ** (alpha + 1.0) - 2.0 * (m + 1.0) ** (alpha + 1.0)
    w0 = m ** (alpha + 1.0) - (m - alpha) * (m + 1.0) ** alpha

    y = np.empty(n + 1)
    # history of f(t_j) - A y_j stored reversed: rrev[n - j] = r_j
    rrev = np.empty(n + 1)
    y[0] = problem.y0
    rrev[n] = f_vals[0] - a_coeff * problem.y0

    for k in range(n):
        hist = rrev[n - k:]
        y_pred = head[k + 1] + c_pred * (db[: k + 1] @ hist)
        r_pred = f_vals[k + 1] - a_coeff * y_pred
        s_corr = w0[k] * rrev[n] + (d2[:k] @ hist[:k]) + r_pred
        y_next = head[k + 1] + c_corr * s_corr
        if abs(y_next) > 1e300 or math.isnan(y_next):
            raise DivergenceError(
                f"solution magnitude exceeded 1e300 at t = {times[k + 1]:g}"
            )
        y[k + 1] = y_next
        rrev[n - (k + 1)] = f_vals[k + 1] - a_coeff * y_next

    y.setflags(write=False)
    return Trajectory(grid=grid, values=y, method="pece", problem=problem, notes=notes)


@dataclass(frozen=True)
class OrderEstimate:
    """Least-squares convergence slope with the error ladder behind it."""

    slope: float
    steps: tuple
    max_errors: tuple


def empirical_order(
    problem: FroProblem,
    steps: Sequence[float],
    reference: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    t_min: float = 0.0,
) -> OrderEstimate:
    """Estimate the convergence order from a ladder of step sizes.

    Solves the problem at each step size, measures the max-norm error
    against `reference` (a callable of the time array; defaults to the
    analytic Mittag-Leffler solution), and returns the least-squares slope
    of log(error) against log(h).

    For alpha < 1 with y0 != 0 the solution behaves like t^alpha at the
    origin and the scheme's error in the first few nodes decays only like
    h^(2 alpha); away from that startup layer the full O(h^(min(2,1+alpha)))
    rate holds.  `t_min` restricts the error measurement to t >= t_min so
    the asymptotic rate can be observed; the default 0 measures the whole
    grid.
    """
    if len(steps) < 3:
        raise ValueError("empirical_order: need at least 3 step sizes")
    if reference is None:
        from . import analytic

        def reference(times: np.ndarray) -> np.ndarray:
            return analytic.solution_values(problem, times)

    errs = []
    for hstep in steps:
        prob_h = problem.with_step(float(hstep))
        traj = solve_pece(prob_h)
        ref = np.asarray(reference(traj.times), dtype=float)
        if ref.shape != traj.values.shape:
            raise ReferenceUnavailableError(
                "reference solution does not cover the requested grid"
            )
        window = traj.times >= t_min
        errs.append(float(np.max(np.abs(traj.values[window] - ref[window]))))
    log_h = np.log(np.asarray(steps, dtype=float))
    log_e = np.log(np.maximum(errs, 1e-300))
    slope = float(np.polyfit(log_h, log_e, 1)[0])
    return OrderEstimate(slope=slope, steps=tuple(float(s) for s in steps), max_errors=tuple(errs))
