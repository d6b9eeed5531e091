"""Concurrence, Lewenstein-Sanpera decompositions and the S + C scan.

A Lewenstein-Sanpera decomposition (LSD) writes ``P = lam * P_sep + (1 - lam) * pi``
with ``P_sep`` separable and ``pi`` a pure projector. For a fixed ``pi`` the
pure weight ``w = 1 - lam`` is feasible when both

    P - w pi >= 0              (positivity of the remainder)
    P^G - w pi^G >= 0          (PPT, i.e. separability for two qubits)

hold, where ``^G`` is the PH3 transform. Each constraint is a concave
minimum-eigenvalue condition in ``w``, so the feasible set is an interval.
Its left edge is a root of ``det(P^G - w pi^G)``, found exactly as a
generalized eigenvalue. The degree of separability S maximizes ``1 - w``
over unit vectors in the support of P (a pure part outside the support
can never be split off).
"""

from dataclasses import dataclass, field
import warnings

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.special
from scipy.optimize import minimize
from scipy.stats import qmc

from .classify import ClassLabel, class_of
from .errors import DomainError, InvalidStateError
from .statecore import (DEFAULT_TOL, SIGMA, PauliRep, apply_local, from_matrix,
                        swap_qubits, to_matrix)
from .criteria import hw_transform


SUPPORT_THRESHOLD = 1e-9


class ConvergenceWarning(RuntimeWarning):
    pass


def ph3_matrix(m):
    """PH3 transform of any 4x4 matrix: (sum_k sigma_k m sigma_k - m) / 2."""
    m = np.asarray(m, dtype=complex)
    return 0.5 * (np.einsum("kij,jl,klm->im", SIGMA, m, SIGMA) - m)


@dataclass(frozen=True, eq=False)
class ConcurrenceResult:
    value: float
    r_values: np.ndarray

    def to_dict(self):
        return {"value": self.value, "r_values": self.r_values.tolist()}


def _psd_sqrt(m):
    ev, vec = np.linalg.eigh(m)
    return (vec * np.sqrt(np.clip(ev, 0.0, None))) @ vec.conj().T


def concurrence(p, tol=DEFAULT_TOL):
    """Concurrence from the spectrum of P times its HW transform.

    The r_k are the square roots of the eigenvalues of ``P Pbar``. They are
    computed as the singular values of ``sqrt(P) sqrt(Pbar)``, which keeps
    them accurate to rounding even when P is rank deficient (square roots of
    the product's eigenvalues would turn 1e-18 noise into 1e-9 errors).
    """
    m = to_matrix(p)
    w_min = float(np.linalg.eigvalsh(m)[0])
    if w_min < -tol:
        raise InvalidStateError(f"not a positive state (min eigenvalue {w_min:.3g})", min_eigenvalue=w_min)
    mbar = to_matrix(hw_transform(p))
    r = np.sort(np.linalg.svd(_psd_sqrt(m) @ _psd_sqrt(mbar), compute_uv=False))
    value = max(0.0, 2.0 * r[-1] - float(np.sum(r)))
    return ConcurrenceResult(float(value), r)


def _pure_ph3(psi):
    """PH3 transform of |psi><psi| without forming the 4x4x4 contraction."""
    phi = SIGMA @ psi
    return 0.5 * (phi.T @ phi.conj() - np.outer(psi, psi.conj()))


def _is_pure_projector(pure, tol):
    if pure.shape != (4, 4):
        return False
    if np.max(np.abs(pure - pure.conj().T)) > tol or abs(np.trace(pure) - 1) > tol:
        return False
    return np.linalg.norm(pure - pure @ pure) <= max(tol, 1e-8)


# touching roots (feasible set a single point) are accepted down to this level
_TOUCH = 1e-12


class _PureWeightSolver:
    """Per-state precomputation for the smallest feasible pure weight."""

    def __init__(self, m, tol):
        self.m = m
        self.tol = tol
        self.evals, self.evecs = np.linalg.eigh(m)
        self.keep = self.evals > SUPPORT_THRESHOLD
        self.support = self.evecs[:, self.keep]
        self.support_evals = self.evals[self.keep]
        self.m_ph3 = ph3_matrix(m)
        self.ph3_min = float(np.linalg.eigvalsh(self.m_ph3)[0])
        cond = np.linalg.cond(self.m_ph3)
        self.m_ph3_inv = np.linalg.inv(self.m_ph3) if cond < 1e10 else None

    def weight_cap(self, psi):
        """Largest w with m - w |psi><psi| >= 0 (0 when psi leaves the support)."""
        amps = self.evecs.conj().T @ psi
        if np.linalg.norm(amps[~self.keep]) > np.sqrt(max(self.tol, 1e-16)):
            return 0.0
        amps = amps[self.keep]
        return min(1.0, 1.0 / float(np.sum((amps.real ** 2 + amps.imag ** 2) / self.support_evals)))

    def _roots(self, pure_ph3):
        if self.m_ph3_inv is not None:
            mu = np.linalg.eigvals(self.m_ph3_inv @ pure_ph3)
            mu = mu[np.abs(mu.imag) <= 1e-9 * np.maximum(1.0, np.abs(mu.real))].real
            mu = mu[mu > 0.0]
            return np.sort(1.0 / mu)
        roots = scipy.linalg.eigvals(self.m_ph3, pure_ph3)
        roots = roots[np.isfinite(roots)]
        roots = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots.real))].real
        return np.sort(roots[roots > 0.0])

    def min_weight(self, psi):
        """Smallest feasible w for pure part |psi>.

        The PPT-feasible w form an interval whose ends are generalized eigenvalues
        of (m^PH3, pure^PH3). Returns ``(w, None)`` when feasible, otherwise
        ``(None, violation)`` with the least-negative PH3 eigenvalue seen on
        [0, cap], which keeps the outer search informed off the feasible set.
        """
        if self.ph3_min >= -self.tol:
            return 0.0, None
        w_cap = self.weight_cap(psi)
        pure_ph3 = _pure_ph3(psi)

        def f(w):
            return np.linalg.eigvalsh(self.m_ph3 - w * pure_ph3)[0]

        cands = [w for w in self._roots(pure_ph3) if w <= w_cap]
        edges = cands + [w_cap]
        best = self.ph3_min
        for i, w in enumerate(cands):
            right = edges[i + 1]
            mid = 0.5 * (w + right)
            fm = f(mid) if right > w else -np.inf
            fw = f(w)
            best = max(best, fm, fw)
            if fm >= 0.0:
                if fw >= 0.0:
                    return w, None
                # root known to rounding only; walk to the feasible side
                step = 4 * np.spacing(w)
                while w + step < mid:
                    if f(w + step) >= 0.0:
                        return w + step, None
                    step *= 2.0
                return mid, None
            if fw >= -_TOUCH:
                return w, None
        fcap = f(w_cap)
        if fcap >= -_TOUCH:
            return w_cap, None
        return None, max(best, fcap)

    def objective(self, psi):
        w, violation = self.min_weight(psi)
        return violation if w is None else 1.0 - w


def lsd_lambda_max(p, pure, tol=DEFAULT_TOL):
    """Largest lam with (P - (1 - lam) pure) / lam positive and separable, 0 if none."""
    pure = np.asarray(pure, dtype=complex)
    if not _is_pure_projector(pure, tol):
        raise DomainError("pure part must be a rank-1 projector")
    m = to_matrix(p)
    if np.linalg.eigvalsh(m)[0] < -tol:
        raise InvalidStateError("not a positive state")
    psi = np.linalg.eigh(pure)[1][:, -1]
    w, _ = _PureWeightSolver(m, tol).min_weight(psi)
    return 0.0 if w is None else 1.0 - w


@dataclass(frozen=True, eq=False)
class LsdResult:
    lam: float
    sep_part: np.ndarray
    pure_part: np.ndarray
    min_eig_sep: float
    min_eig_ph3_sep: float
    pure_defect: float
    reconstruction_error: float
    restarts: int
    evaluations: int
    seed: int
    converged: bool = True
    pure_part_used: bool = True
    method: str = "simplex"
    restart_values: tuple = field(default=())

    @property
    def certificates(self):
        return {"min_eig_sep": self.min_eig_sep, "min_eig_ph3_sep": self.min_eig_ph3_sep,
                "pure_defect": self.pure_defect, "reconstruction_error": self.reconstruction_error}

    def to_dict(self):
        def mat(x):
            return [[[float(v.real), float(v.imag)] for v in row] for row in x]
        return {
            "S": self.lam,
            "sep_part": mat(self.sep_part),
            "pure_part": mat(self.pure_part),
            "pure_part_used": self.pure_part_used,
            "method": self.method,
            "certificates": self.certificates,
            "search_stats": {"restarts": self.restarts, "evaluations": self.evaluations, "seed": self.seed},
            "converged": self.converged,
        }


def _result(m, lam, sep, pure, **stats):
    recon = lam * sep + (1.0 - lam) * pure
    return LsdResult(
        lam=float(lam),
        sep_part=sep,
        pure_part=pure,
        min_eig_sep=float(np.linalg.eigvalsh(sep)[0]),
        min_eig_ph3_sep=float(np.linalg.eigvalsh(ph3_matrix(sep))[0]),
        pure_defect=float(np.linalg.norm(pure - pure @ pure)),
        reconstruction_error=float(np.linalg.norm(recon - m)),
        **stats,
    )


def _schmidt_dephased(psi):
    """Separable state keeping only the Schmidt-diagonal part of |psi><psi|; barely separable."""
    u, sv, vh = np.linalg.svd(psi.reshape(2, 2))
    out = np.zeros((4, 4), dtype=complex)
    for k in range(2):
        v = np.kron(u[:, k], vh[k])
        out += sv[k] ** 2 * np.outer(v, v.conj())
    return out


def product_vectors_in_span(basis, tol=1e-10):
    """Unit product vectors in the span of two orthonormal 4-vectors.

    ``z = c1 b1 + c2 b2`` is a product vector iff ``det(z.reshape(2, 2)) = 0``,
    a binary quadratic form in (c1, c2). Returns a list of 0, 1 or 2 vectors,
    or ``None`` when every vector of the span is a product vector.
    """
    z1 = basis[:, 0].reshape(2, 2)
    z2 = basis[:, 1].reshape(2, 2)
    qa = np.linalg.det(z1)
    qd = np.linalg.det(z2)
    qb = np.linalg.det(z1 + z2) - qa - qd
    if max(abs(qa), abs(qb), abs(qd)) <= tol:
        return None
    coeffs = []
    if abs(qa) <= tol:
        # c2 = 0 is a root; the other solves qb c1 + qd c2 = 0
        coeffs.append(np.array([1.0, 0.0]))
        if abs(qb) > tol:
            coeffs.append(np.array([-qd / qb, 1.0]))
    else:
        disc = np.sqrt(qb * qb - 4 * qa * qd + 0j)
        for sgn in (1, -1):
            coeffs.append(np.array([(-qb + sgn * disc) / (2 * qa), 1.0]))
        if abs(disc) <= np.sqrt(tol) * max(1.0, abs(qb)):
            coeffs = coeffs[:1]
    out = []
    for c in coeffs:
        z = basis @ c
        out.append(z / np.linalg.norm(z))
    return out


def _max_weight_along(mat, v):
    """Largest beta with mat - beta |v><v| >= 0 for a PSD 2x2 ``mat``."""
    ev, vec = np.linalg.eigh(mat)
    amps = vec.conj().T @ v
    if ev[0] <= 1e-14 * max(1.0, ev[-1]):
        if abs(amps[0]) > 1e-9:
            return 0.0
        return float(ev[-1] / abs(amps[-1]) ** 2) if abs(amps[-1]) > 0 else np.inf
    return 1.0 / float(np.sum(np.abs(amps) ** 2 / ev))


def _rank2_lsd(m, support, seed):
    """Exact optimal LSD when P has rank 2.

    A separable remainder supported in the 2-d range of P must mix the (at most
    two) product vectors u, v of that range, so S = max (alpha + beta) subject
    to P - alpha uu^dag - beta vv^dag >= 0, a concave 1-d problem in alpha.
    """
    prods = product_vectors_in_span(support)
    pm = support.conj().T @ m @ support
    pm = (pm + pm.conj().T) / 2
    coords = [support.conj().T @ z for z in prods]
    projs = [np.outer(c, c.conj()) for c in coords]
    if not coords:
        lam, weights = 0.0, []
    elif len(coords) == 1:
        beta = _max_weight_along(pm, coords[0])
        lam, weights = beta, [beta]
    else:
        u, v = coords
        a_max = _max_weight_along(pm, u)

        def neg_total(alpha):
            return -(alpha + _max_weight_along(pm - alpha * projs[0], v))

        res = scipy.optimize.minimize_scalar(neg_total, bounds=(0.0, a_max), method="bounded",
                                             options={"xatol": 1e-13})
        cands = [(0.0, -neg_total(0.0)), (a_max, -neg_total(a_max)), (res.x, -res.fun)]
        alpha, lam = max(cands, key=lambda ab: ab[1])
        weights = [alpha, lam - alpha]
    lam = min(max(lam, 0.0), 1.0)
    sep_small = sum((wt * pr for wt, pr in zip(weights, projs)), np.zeros((2, 2), dtype=complex))
    rem = pm - sep_small
    ev, vec = np.linalg.eigh((rem + rem.conj().T) / 2)
    psi = support @ vec[:, -1]
    pure = np.outer(psi, psi.conj())
    if lam <= 0.0:
        return _result(m, 0.0, _schmidt_dephased(psi), pure, restarts=0, evaluations=0, seed=seed,
                       method="rank2-exact")
    sep = support @ sep_small @ support.conj().T / lam
    return _result(m, lam, sep, pure, restarts=0, evaluations=0, seed=seed, method="rank2-exact")


def _chart(z0):
    """Map R^{2(r-1)} -> unit vectors in C^r, centred on z0."""
    r = z0.size
    q, _ = np.linalg.qr(np.column_stack([z0, np.eye(r, dtype=complex)]))
    comp = q[:, 1:r]

    def to_vec(x):
        h = x.size // 2
        z = z0 + comp @ (x[:h] + 1j * x[h:])
        return z / np.linalg.norm(z)
    return to_vec


def _starts(r, restarts, seed):
    """Eigenvectors of P (largest eigenvalue first), then scrambled-Sobol Gaussian draws."""
    starts = [np.eye(r, dtype=complex)[:, r - 1 - k] for k in range(min(r, restarts))]
    extra = restarts - len(starts)
    if extra > 0:
        n = 1 << max(0, int(np.ceil(np.log2(extra))))
        sob = qmc.Sobol(d=2 * r, scramble=True, seed=seed).random(n)[:extra]
        g = scipy.special.ndtri(np.clip(sob, 1e-12, 1 - 1e-12))
        for row in g:
            z = row[:r] + 1j * row[r:]
            starts.append(z / np.linalg.norm(z))
    return starts


def _simplex_search(objective, to_vec, dim, x0, step, xatol, fatol, maxfev):
    simplex = np.vstack([x0, x0 + step * np.eye(dim)])
    res = minimize(lambda x: -objective(to_vec(x)), x0, method="Nelder-Mead",
                   options={"initial_simplex": simplex, "xatol": xatol, "fatol": fatol, "maxfev": maxfev})
    return res


def optimal_lsd(p, restarts=16, seed=0, inner_tol=1e-8, outer_tol=1e-6, tol=DEFAULT_TOL):
    """Optimal LSD of a two-qubit state; S is the largest certified lam found.

    Separable input gives S = 1 with an unused placeholder pure part. Rank-1 and
    rank-2 states are solved exactly. Otherwise the pure part ranges over unit
    vectors in the support of P: every restart runs a coarse Nelder-Mead search
    in a 2(r-1)-dimensional chart centred on its start, and the best restart
    (largest lam, then lowest index) is polished to ``inner_tol``.
    """
    m = to_matrix(p)
    solver = _PureWeightSolver(m, tol)
    if solver.evals[0] < -tol:
        raise InvalidStateError(f"not a positive state (min eigenvalue {solver.evals[0]:.3g})",
                                min_eigenvalue=float(solver.evals[0]))
    if solver.ph3_min >= -tol:
        top = solver.evecs[:, -1]
        return _result(m, 1.0, m, np.outer(top, top.conj()), restarts=0, evaluations=0, seed=seed,
                       pure_part_used=False, method="separable")

    support = solver.support
    r = support.shape[1]
    if r == 1:
        # the pure part is forced; S still comes from the weight solve, not a literal 0
        psi = support[:, 0]
        w, _ = solver.min_weight(psi)
        lam = 0.0 if w is None else max(0.0, 1.0 - w)
        return _result(m, lam, _schmidt_dephased(psi), np.outer(psi, psi.conj()),
                       restarts=0, evaluations=1, seed=seed, method="pure")
    if r == 2:
        return _rank2_lsd(m, support, seed)

    evaluations = 0
    # best feasible point seen; the optimum sits where the feasible w interval
    # closes to a point, so re-evaluating a rounded copy of it can flip verdicts
    best = [-np.inf, None, None]

    def objective(z):
        nonlocal evaluations
        evaluations += 1
        psi = support @ z
        value = solver.objective(psi)
        if value > best[0]:
            w, _ = solver.min_weight(psi)
            if w is not None:
                best[:] = [1.0 - w, psi, w]
        return value

    dim = 2 * (r - 1)
    runs = []
    for z0 in _starts(r, restarts, seed):
        to_vec = _chart(z0)
        res = _simplex_search(objective, to_vec, dim, np.zeros(dim), 0.5, 1e-3, outer_tol, 40 * dim)
        runs.append((-res.fun, to_vec, res.x, res.success))
    values = tuple(v for v, *_ in runs)
    best_idx = max(range(len(runs)), key=lambda i: (runs[i][0], -i))
    _, to_vec, x, _ = runs[best_idx]
    converged = any(ok for *_, ok in runs)
    step, value = 0.05, runs[best_idx][0]
    # restart the simplex with shrinking steps until it stops paying off
    for _ in range(8):
        # recentre the chart on the incumbent so each round starts from a fresh frame
        to_vec = _chart(to_vec(x))
        res = _simplex_search(objective, to_vec, dim, np.zeros(dim), step, inner_tol, 1e-15, 400 * dim)
        gain = -res.fun - value
        x, value = res.x, -res.fun
        converged = converged or res.success
        if gain < 1e-12 and step < 1e-3:
            break
        step *= 0.2

    _, psi, w = best
    if psi is None:
        psi = support @ to_vec(x)
    pure = np.outer(psi, psi.conj())
    if w is None or w >= 1.0:
        lam, sep = 0.0, _schmidt_dephased(psi)
    else:
        lam = 1.0 - w
        sep = (m - w * pure) / lam
        sep = (sep + sep.conj().T) / 2
    if not converged:
        warnings.warn("no Nelder-Mead run converged; returning best effort",
                      ConvergenceWarning, stacklevel=2)
    return _result(m, lam, sep, pure, restarts=restarts, evaluations=evaluations, seed=seed,
                   converged=converged, restart_values=values)


def barely_separable_residual(sep, tol=DEFAULT_TOL):
    """Minimum eigenvalue of the PH3 transform of a separable state (0 at the boundary)."""
    if isinstance(sep, PauliRep):
        sep = to_matrix(sep)
    sep = np.asarray(sep, dtype=complex)
    if np.linalg.eigvalsh(sep)[0] < -tol:
        raise DomainError("input is not positive")
    w = float(np.linalg.eigvalsh(ph3_matrix(sep))[0])
    if w < -tol:
        raise DomainError(f"input is not separable (PH3 min eigenvalue {w:.3g})")
    return w


SWAP = "swap"


def _apply_transform(m, transform):
    p = from_matrix(m, tol=1e-6)
    if isinstance(transform, str):
        if transform != SWAP:
            raise DomainError(f"unknown transform {transform!r}")
        return to_matrix(swap_qubits(p))
    return to_matrix(apply_local(p, transform))


@dataclass(frozen=True)
class InheritanceReport:
    passed: bool
    sep_defects: tuple
    pure_defects: tuple


def check_invariance_inheritance(p, result, transforms, tol=1e-6):
    """Check that both LSD parts share every local or swap symmetry of P.

    ``transforms`` holds :class:`LocalRotation` objects or the string ``"swap"``.
    Each must leave P invariant within ``tol``; the parts are then required to be
    invariant within ``10 * tol``.
    """
    m = to_matrix(p)
    sep_d, pure_d = [], []
    for tr in transforms:
        if np.max(np.abs(_apply_transform(m, tr) - m)) > tol:
            raise DomainError(f"transform {tr!r} does not leave the state invariant")
        sep_d.append(float(np.max(np.abs(_apply_transform(result.sep_part, tr) - result.sep_part))))
        pure_d.append(float(np.max(np.abs(_apply_transform(result.pure_part, tr) - result.pure_part))))
    passed = all(d <= 10 * tol for d in sep_d + pure_d)
    return InheritanceReport(passed, tuple(sep_d), tuple(pure_d))


@dataclass(frozen=True)
class ConjectureRecord:
    s_value: float
    c_value: float
    sum: float
    cls: ClassLabel
    state_seed: int = -1

    def violates(self, tol=2e-3):
        return self.sum > 1.0 + tol or self.sum <= 0.0


def conjecture_check(p, restarts=16, seed=0, state_seed=-1, tol=DEFAULT_TOL):
    """S from :func:`optimal_lsd`, C from :func:`concurrence`; the sum is never clamped."""
    lsd = optimal_lsd(p, restarts=restarts, seed=seed, tol=tol)
    conc = concurrence(p, tol=tol)
    return ConjectureRecord(lsd.lam, conc.value, lsd.lam + conc.value, class_of(p, tol), state_seed)
