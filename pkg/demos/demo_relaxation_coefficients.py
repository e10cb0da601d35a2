"""Relaxation coefficient sweep at half order.

D^0.5 u + A u = t sin(t) with u(0) = 2 and A in {1, 2, 3}: the larger the
coefficient, the stiffer the restoring term and the smaller the excursion
of the relaxation curve.
"""

from pathlib import Path

from fro import FroProblem, parse_expression, solve_pece
from fro.dataio import export_trajectory

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

forcing = parse_expression("t*sin(t)")

for coeff in (1.0, 2.0, 3.0):
    problem = FroProblem(alpha=0.5, relax_coeff=coeff, forcing=forcing,
                         y0=2.0, y0_prime=0.0, step=0.05, duration=10.0)
    traj = solve_pece(problem)
    print(f"A={coeff:g}: range of u = [{traj.values.min():+.4f}, "
          f"{traj.values.max():+.4f}]")
    export_trajectory(traj, OUT / f"coefficient_A_{coeff:g}.csv")
