"""Global and local polynomial invariants of a two-qubit state.

The eigenvalues kappa of K = 1 - 4P solve

    kappa^4 - A2 kappa^2 + A1 kappa - A0 = 0,

with A2 = Tr K^2 / 2, A1 = -Tr K^3 / 3, A0 = Tr K^4 / 4 - (Tr K^2)^2 / 8.
These are always evaluated from matrix traces. In terms of (s, t, C),
checked symbolically against the trace route:

    A2 = 2 Tr(C^T C) + 2 (s^2 + t^2)
    A1 = -8 det C + 8 s.C.t
    A0 = -(A2/2)^2 + 2 [Tr(C^T C)]^2 - 2 Tr[(C^T C)^2] + 4 s^2 t^2
         + 4 s.C C^T.s + 4 t.C^T C.t + 8 det E - 8 det C

where E = C - s t^T. :func:`closed_form_invariants` evaluates these and is
used only as a cross-check.
"""

from dataclasses import astuple, dataclass

import numpy as np

from .errors import DomainError, NoRealRootsError
from .statecore import DEFAULT_TOL, k_operator


@dataclass(frozen=True)
class GlobalInvariants:
    a2: float
    a1: float
    a0: float

    def as_tuple(self):
        return astuple(self)


@dataclass(frozen=True)
class LocalInvariantVector:
    tr_ctc: float
    det_c: float
    tr_ctc_sq: float
    s_sq: float
    t_sq: float
    s_c_t: float
    s_cct_s: float
    t_ctc_t: float
    det_e: float

    def as_tuple(self):
        return astuple(self)


@dataclass(frozen=True)
class LambdaTriple:
    l1: float
    l2: float
    l3: float

    def roots(self):
        """Reconstruct (kappa1, kappa2, kappa3, kappa4) in the parameterization's order."""
        l1, l2, l3 = self.l1, self.l2, self.l3
        return np.array([(l1 - l2) - l3, -(l1 - l2) - l3, -(l1 + l2) + l3, (l1 + l2) + l3])

    def invariants(self):
        l1, l2, l3 = self.l1, self.l2, self.l3
        a2 = 2 * (l1 ** 2 + l2 ** 2 + l3 ** 2)
        a1 = -8 * l1 * l2 * l3
        a0 = 2 * (l1 ** 2 * l2 ** 2 + l2 ** 2 * l3 ** 2 + l3 ** 2 * l1 ** 2) - (l1 ** 4 + l2 ** 4 + l3 ** 4)
        return GlobalInvariants(a2, a1, a0)


def invariants_of_k(k):
    """Quartic coefficients of a Hermitian traceless 4x4 matrix via traces of its powers."""
    k2 = k @ k
    tr2 = np.trace(k2).real
    tr3 = np.trace(k2 @ k).real
    tr4 = np.trace(k2 @ k2).real
    return GlobalInvariants(tr2 / 2, -tr3 / 3, tr4 / 4 - tr2 ** 2 / 8)


def global_invariants(p):
    return invariants_of_k(k_operator(p))


def entanglement_dyadic(p):
    """E = C - s t^T; vanishes exactly for product states."""
    return p.c - np.outer(p.s, p.t)


def local_invariants(p):
    s, t, c = p.s, p.t, p.c
    ctc = c.T @ c
    return LocalInvariantVector(
        tr_ctc=float(np.trace(ctc)),
        det_c=float(np.linalg.det(c)),
        tr_ctc_sq=float(np.trace(ctc @ ctc)),
        s_sq=float(s @ s),
        t_sq=float(t @ t),
        s_c_t=float(s @ c @ t),
        s_cct_s=float(s @ c @ c.T @ s),
        t_ctc_t=float(t @ ctc @ t),
        det_e=float(np.linalg.det(entanglement_dyadic(p))),
    )


def closed_form_invariants(v):
    """A2, A1, A0 from a :class:`LocalInvariantVector` (diagnostic cross-check only)."""
    a2 = 2 * v.tr_ctc + 2 * (v.s_sq + v.t_sq)
    a1 = -8 * v.det_c + 8 * v.s_c_t
    a0 = (-(a2 / 2) ** 2 + 2 * v.tr_ctc ** 2 - 2 * v.tr_ctc_sq + 4 * v.s_sq * v.t_sq
          + 4 * v.s_cct_s + 4 * v.t_ctc_t + 8 * v.det_e - 8 * v.det_c)
    return GlobalInvariants(a2, a1, a0)


def _clusters(roots, radius):
    """Group roots (sorted by real part) into chains with gaps below ``radius``."""
    order = np.argsort(roots.real)
    groups = [[order[0]]]
    for i in order[1:]:
        if min(abs(roots[i] - roots[j]) for j in groups[-1]) <= radius:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [roots[g] for g in groups]


def quartic_roots(g, imag_tol=1e-8):
    """Real roots of kappa^4 - A2 kappa^2 + A1 kappa - A0, sorted ascending.

    Roots come from the companion-matrix eigenvalues. A root of multiplicity m
    is only determined to about eps**(1/m), so nearby roots are grouped and a
    group of size m may carry imaginary parts up to ``10 * eps**(1/m)`` (times
    the root scale) before it counts as complex; an isolated root is held to
    ``imag_tol``. Such a group is returned as its mean, which is well conditioned.
    Raises :class:`NoRealRootsError` when a complex pair is detected.
    """
    roots = np.roots([1.0, 0.0, -g.a2, g.a1, -g.a0])
    if roots.size == 0:
        return np.zeros(4)
    scale = max(1.0, float(np.max(np.abs(roots))))
    out = []
    for grp in _clusters(roots, 1e-3 * scale):
        m = grp.size
        allowed = imag_tol if m == 1 else max(imag_tol, 10 * np.finfo(float).eps ** (1.0 / m))
        worst = float(np.max(np.abs(grp.imag)))
        if worst > allowed * scale:
            raise NoRealRootsError(
                f"quartic with (A2, A1, A0) = {g.as_tuple()} has complex roots "
                f"(max |Im| = {worst:.3g}); it cannot come from a Hermitian K")
        if worst > imag_tol * scale:
            out.extend([float(np.mean(grp.real))] * m)
        else:
            out.extend(grp.real.tolist())
    return np.sort(np.array(out))


def positivity_inequalities(g):
    """Signed slacks (1 - A2 + A1 - A0, 4 - 2 A2 + A1, 6 - A2); all >= 0 iff K <= 1.

    The first slack equals the product of (1 - kappa_j) over the four roots.
    """
    return np.array([1.0 - g.a2 + g.a1 - g.a0, 4.0 - 2.0 * g.a2 + g.a1, 6.0 - g.a2])


def lambda_parameterization(roots, tol=DEFAULT_TOL):
    """Map four roots (in the given order) with zero sum to (l1, l2, l3)."""
    k = np.asarray(roots, dtype=float).reshape(-1)
    if k.shape != (4,):
        raise DomainError("expected exactly four roots")
    total = float(np.sum(k))
    if abs(total) > tol * max(1.0, float(np.max(np.abs(k)))):
        raise DomainError(f"roots must sum to zero (sum = {total:.3g})")
    return LambdaTriple(0.5 * (k[0] + k[3]), 0.5 * (k[1] + k[3]), 0.5 * (k[2] + k[3]))
