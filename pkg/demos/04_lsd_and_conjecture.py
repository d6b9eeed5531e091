"""Optimal Lewenstein-Sanpera decompositions and the S + C <= 1 surmise.

S is the largest weight of a separable part in P = S sep + (1 - S) pure.
"""
import warnings

import numpy as np

from pauliscope import ConvergenceWarning, concurrence, optimal_lsd, rank2_state, werner_state
from pauliscope.cli import run_scan

# Werner family: S = 1 - (3x - 1)/2 above the threshold.
for x in (0.4, 0.6, 0.8, 1.0):
    r = optimal_lsd(werner_state(x))
    print(f"Werner x={x:.1f}  S={r.lam:.6f}  closed form {1 - max(0, (3 * x - 1) / 2):.6f}")

# A rank-2 state, solved exactly through the product vectors of its support.
r = optimal_lsd(rank2_state(0.3, np.pi / 6))
print(f"rank-2 x=0.3: S={r.lam:.6f} via {r.method}")
print("certificates:", {k: f"{v:.2e}" for k, v in r.certificates.items()})

# For these two families S + C is exactly 1.
p = werner_state(0.7)
print("Werner 0.7: S + C =", optimal_lsd(p).lam + concurrence(p).value)

# A small reproducible scan over Hilbert-Schmidt random states.
with warnings.catch_warnings():
    warnings.simplefilter("ignore", ConvergenceWarning)
    rows = run_scan(12, seed=1)
sums = np.array([row.sum for row in rows])
print(f"12 random states: max S + C = {sums.max():.4f}, "
      f"{sum(row.separable for row in rows)} separable")
