"""Classes A to F, family descriptors and why local invariants are not enough."""
import numpy as np

from pauliscope import (LocalRotation, PauliRep, apply_local, bell_state, canonicalize,
                        local_invariants, pure_state, random_state, same_family)

rng = np.random.default_rng(1)

for name, p in [("Bell", bell_state()), ("pure p=0.5", pure_state(0.5)),
                ("pure p=1", pure_state(1.0)), ("random", random_state(3))]:
    desc, _ = canonicalize(p)
    print(f"{name:11s} class {desc.cls}  c = {np.round(desc.c, 4)}")

# The descriptor does not move when either qubit is rotated.
p = random_state(5)
ref, _ = canonicalize(p)
worst = 0.0
for _ in range(200):
    desc, _ = canonicalize(apply_local(p, LocalRotation.random(rng)))
    worst = max(worst, np.max(np.abs(desc.vector() - ref.vector())))
print("max descriptor drift over 200 rotations:", worst)

# Two states sharing every degree-4 local invariant, yet in different families.
c = np.diag([0.5, 0.25, 0.0])
p1 = PauliRep([0.25, 0.0, 0.5], np.zeros(3), c)
p2 = PauliRep([0.0, 0.5, 0.25], np.zeros(3), c)
v1 = np.array(local_invariants(p1).as_tuple())
v2 = np.array(local_invariants(p2).as_tuple())
print("local invariants differ by", np.max(np.abs(v1 - v2)))
print("same family?", same_family(p1, p2))
print("descriptors:", canonicalize(p1)[0].to_dict(), canonicalize(p2)[0].to_dict(), sep="\n  ")
