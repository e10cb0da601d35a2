"""The Mittag-Leffler function family that solves these equations.

E_{alpha,1}(-t^alpha) interpolates between pure exponential decay
(alpha = 1) and undamped cosine oscillation (alpha = 2); fractional orders
in between give algebraic tails (alpha < 1) or damped ringing (alpha > 1).
"""

import numpy as np

from fro import gamma, ml

t = np.linspace(0.0, 12.0, 121)

print("classical identities:")
print(f"  E_1,1(-1)   = {ml(1, 1, -1.0):.15f}   (1/e = {np.exp(-1.0):.15f})")
print(f"  E_2,1(-1)   = {ml(2, 1, -1.0):.15f}   (cos 1 = {np.cos(1.0):.15f})")
print(f"  E_a,b(0)    = {ml(0.7, 1.3, 0.0):.15f}   (1/Gamma(1.3) = {1 / gamma(1.3):.15f})")

print()
print("decay of E_alpha(-t^alpha) at t = 10:")
for alpha in (0.25, 0.5, 0.75, 1.0):
    val = ml(alpha, 1.0, -(10.0 ** alpha))
    print(f"  alpha = {alpha:4}: {val:.6e}")
print("(smaller alpha keeps a heavier algebraic tail)")

print()
print("ringing for alpha > 1: sign changes of E_alpha(-t^alpha) on [0, 12]")
for alpha in (1.2, 1.5, 1.8, 2.0):
    vals = ml(alpha, 1.0, -(t ** alpha))
    changes = int(np.sum(np.diff(np.sign(vals)) != 0))
    print(f"  alpha = {alpha:4}: {changes} sign changes")
