"""Separability margins and concurrence along the Werner line and for pure states."""
import numpy as np

from pauliscope import concurrence, is_separable, pure_state, werner_state

print(" x     separable  min PH3 eig   C")
for x in np.linspace(0, 1, 11):
    p = werner_state(x)
    rep = is_separable(p)
    print(f"{x:4.1f}  {str(rep.satisfied):9s}  {rep.min_eigenvalue:+.4f}     {concurrence(p).value:.4f}")
# threshold at x = 1/3, where C = (3x - 1)/2 leaves zero

print()
print(" p     C        sqrt(1-p^2)")
for p_param in (0.0, 0.3, 0.6, 0.9, 1.0):
    c = concurrence(pure_state(p_param)).value
    print(f"{p_param:4.1f}  {c:.6f}  {np.sqrt(1 - p_param ** 2):.6f}")
