"""Empirical convergence order against the Mittag-Leffler reference.

Halving the step four times and regressing log(error) on log(h) recovers
the scheme's O(h^q) rate, q = min(2, 1 + alpha), measured past the t^alpha
startup layer (t >= T/4).  The full-grid column shows the layer's slower
h^(2 alpha) decay for alpha < 1.
"""

from fro import FroProblem, empirical_order

LADDER = (1 / 64, 1 / 128, 1 / 256, 1 / 512)

print(f"{'alpha':>6} {'q':>5} {'tail slope':>11} {'full-grid slope':>16}")
for alpha in (0.5, 0.8, 1.0, 1.2, 1.8, 2.0):
    problem = FroProblem(alpha=alpha, relax_coeff=1.0, y0=1.0, y0_prime=0.0,
                         step=LADDER[0], duration=2.0)
    tail = empirical_order(problem, LADDER, t_min=0.5)
    full = empirical_order(problem, LADDER)
    q = min(2.0, 1.0 + alpha)
    print(f"{alpha:>6} {q:>5} {tail.slope:>11.3f} {full.slope:>16.3f}")

print()
print("error ladder at alpha = 0.5 (tail):")
problem = FroProblem(alpha=0.5, relax_coeff=1.0, y0=1.0, step=LADDER[0], duration=2.0)
est = empirical_order(problem, LADDER, t_min=0.5)
for h, err in zip(est.steps, est.max_errors):
    print(f"  h = {h:<12g} max error = {err:.3e}")
