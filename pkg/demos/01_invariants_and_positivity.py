"""Global invariants of a few named states and what they say about positivity.

Run with ``python3 demos/01_invariants_and_positivity.py``.
"""
import numpy as np

from pauliscope import (GlobalInvariants, NoRealRootsError, bell_state, global_invariants,
                        is_positive, positivity_inequalities, product_state, quartic_roots,
                        werner_state, PauliRep)

# The singlet sits exactly on the boundary: all three slacks vanish.
g = global_invariants(bell_state())
print("Bell (A2, A1, A0) =", np.round(g.as_tuple(), 12))
print("slacks           =", np.round(positivity_inequalities(g), 12))
print("roots of quartic =", quartic_roots(g))

# Werner states stay positive all the way to x = 1 and break just beyond.
for x in (0.0, 0.5, 1.0):
    rep = is_positive(werner_state(x))
    print(f"Werner x={x:.1f}: positive={rep.satisfied}  min eig={rep.min_eigenvalue:+.4f}")

# An over-long Bloch vector is caught by both routes.
bad = PauliRep([2, 0, 0], [0, 0, 0], np.zeros((3, 3)))
rep = is_positive(bad)
print("s=(2,0,0): positive =", rep.satisfied, " slacks =", rep.margins)

# Product states of pure qubits are rank 1, so the first slack is exactly zero.
g = global_invariants(product_state([0, 0, 1], [1, 0, 0]))
print("product state slacks:", np.round(positivity_inequalities(g), 12))

# The inequalities alone are not enough: (2, 0, -2) satisfies them, but the
# quartic has no real roots, so no Hermitian K produces it.
g = GlobalInvariants(2.0, 0.0, -2.0)
print("(2, 0, -2) slacks:", positivity_inequalities(g))
try:
    quartic_roots(g)
except NoRealRootsError as err:
    print("quartic_roots:", err)
