"""Same damped oscillator, three different external sources.

D^1.8 u + u = f(t) with u(0) = 1, u'(0) = 0 and f in
{exp(-t), sin(t), cos(t)}.  The decaying source leaves a free damped
oscillation; the periodic sources entrain the response.
"""

from pathlib import Path

import numpy as np

from fro import FroProblem, parse_expression, solve_pece
from fro.dataio import export_trajectory

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

for text in ("exp(-t)", "sin(t)", "cos(t)"):
    problem = FroProblem(alpha=1.8, relax_coeff=1.0,
                         forcing=parse_expression(text),
                         y0=1.0, y0_prime=0.0, step=0.05, duration=10.0)
    traj = solve_pece(problem)
    tail = traj.values[traj.times >= 5.0]
    print(f"f(t) = {text:9s}: amplitude on [5, 10] = {np.ptp(tail) / 2:.4f}, "
          f"u(10) = {traj.values[-1]:+.4f}")
    stem = text.replace("(", "_").replace(")", "").replace("-", "m")
    export_trajectory(traj, OUT / f"forcing_{stem}.csv")
