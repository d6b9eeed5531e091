"""Positivity and separability certificates built on the quartic invariants.

Both tests run the three polynomial inequalities and, independently, a 4x4
eigensolve. The inequalities are only equivalent to ``K <= 1`` when the
quartic's roots are real, which holds for genuine Hermitian input, so the
eigenvalue route is kept alongside as a consistency check.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DiagnosticsError, InvalidStateError
from .invariants import global_invariants, positivity_inequalities
from .statecore import DEFAULT_TOL, PauliRep, to_matrix

# verdicts may legitimately differ when the state sits within this distance of the boundary
_DISAGREEMENT_BAND = 1e-6


@dataclass(frozen=True, eq=False)
class CriterionReport:
    satisfied: bool
    margins: np.ndarray
    min_eigenvalue: float
    negative_count: int

    def to_dict(self):
        return {"satisfied": bool(self.satisfied), "margins": self.margins.tolist(),
                "min_eigenvalue": self.min_eigenvalue, "negative_count": int(self.negative_count)}


def ph3_transform(p):
    """(s, t, C) -> (-s, t, -C); unitarily equivalent to the partial transpose."""
    return PauliRep(-p.s, p.t, -p.c)


def hw_transform(p):
    """(s, t, C) -> (-s, -t, C); the spin-flipped state, isospectral with P."""
    return PauliRep(-p.s, -p.t, p.c)


def _report(margins, eigs, tol, what):
    by_margins = bool(np.all(margins >= -tol))
    by_eigs = bool(eigs[0] >= -tol)
    if by_margins != by_eigs and abs(eigs[0]) > _DISAGREEMENT_BAND:
        raise DiagnosticsError(
            f"{what}: inequality verdict {by_margins} contradicts eigenvalue verdict "
            f"{by_eigs} (margins {margins}, min eigenvalue {eigs[0]:.3g})")
    return CriterionReport(by_margins, margins, float(eigs[0]), int(np.sum(eigs < -tol)))


def is_positive(p, tol=DEFAULT_TOL):
    margins = positivity_inequalities(global_invariants(p))
    eigs = np.linalg.eigvalsh(to_matrix(p))
    return _report(margins, eigs, tol, "positivity")


def separability_margins(p):
    """(1 + 16 det E - (A2 - A1 + A0), 4 + 16 det C - (2 A2 - A1), 6 - A2)."""
    g = global_invariants(p)
    det_c = np.linalg.det(p.c)
    det_e = np.linalg.det(p.c - np.outer(p.s, p.t))
    return np.array([
        1.0 + 16.0 * det_e - (g.a2 - g.a1 + g.a0),
        4.0 + 16.0 * det_c - (2.0 * g.a2 - g.a1),
        6.0 - g.a2,
    ])


def _require_positive(p, tol):
    w = float(np.linalg.eigvalsh(to_matrix(p))[0])
    if w < -tol:
        raise InvalidStateError(f"not a positive state (min eigenvalue {w:.3g})", min_eigenvalue=w)


def is_separable(p, tol=DEFAULT_TOL):
    """Separability of a positive state via the transformed-quartic inequalities."""
    _require_positive(p, tol)
    margins = separability_margins(p)
    eigs = np.linalg.eigvalsh(to_matrix(ph3_transform(p)))
    return _report(margins, eigs, tol, "separability")


def ph3_rank_profile(p, tol=DEFAULT_TOL):
    """(rank, number of negative eigenvalues) of the PH3-transformed matrix."""
    _require_positive(p, tol)
    eigs = np.linalg.eigvalsh(to_matrix(ph3_transform(p)))
    return int(np.sum(np.abs(eigs) > tol)), int(np.sum(eigs < -tol))
