"""Solvers and tools for fractional relaxation-oscillation equations.

The equation family is

    D^alpha u(t) + A u(t) = f(t),    0 < alpha <= 2,

with the Caputo fractional derivative: relaxation behaviour for
alpha <= 1, damped oscillation for alpha > 1.

Quick start::

    >>> import fro
    >>> problem = fro.FroProblem(alpha=0.5, relax_coeff=1.0, y0=1.0,
    ...                          step=0.01, duration=4.0)
    >>> traj = fro.solve_pece(problem)
    >>> ref = fro.analytic_solution(problem)
    >>> abs(traj.values[-1] - ref.values[-1]) < 1e-4
    True
"""

from .expressions import (
    EvaluationError,
    ExpressionError,
    LexicalError,
    ParseError,
    evaluate,
    parse,
    parse_expression,
    to_string,
    tokenize,
)
from .special import (
    GammaPoleError,
    MittagLefflerDomainError,
    gamma,
    ml,
    rgamma,
)
from .solver import (
    DivergenceError,
    FroProblem,
    OrderEstimate,
    ProblemValidationError,
    TimeGrid,
    Trajectory,
    corrector_weight,
    empirical_order,
    predictor_weight,
    rhs,
    solve_pece,
    validate,
    validation_error,
)
from .analytic import (
    GreenFunction,
    analytic_solution,
    green,
    oscillation_solution,
    relaxation_solution,
)
from .dataio import (
    ExperimentalSeries,
    FitReport,
    export_trajectory,
    grid_fit,
    load_series,
    residuals,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # expressions
    "EvaluationError", "ExpressionError", "LexicalError", "ParseError",
    "evaluate", "parse", "parse_expression", "to_string", "tokenize",
    # special functions
    "GammaPoleError", "MittagLefflerDomainError", "gamma", "ml", "rgamma",
    # solver
    "DivergenceError", "FroProblem", "OrderEstimate", "ProblemValidationError",
    "TimeGrid", "Trajectory", "corrector_weight", "empirical_order",
    "predictor_weight", "rhs", "solve_pece", "validate", "validation_error",
    # analytic
    "GreenFunction", "analytic_solution", "green", "oscillation_solution",
    "relaxation_solution",
    # data handling
    "ExperimentalSeries", "FitReport", "export_trajectory", "grid_fit",
    "load_series", "residuals",
]
