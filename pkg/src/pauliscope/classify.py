"""Classification of two-qubit states into families of locally equivalent states.

The cross dyadic is brought to the form ``C = sign * sum_k e_k c_k n_k^T`` with
``c1 >= c2 >= c3 >= 0`` and proper orthonormal frames ``e`` (sigma side) and
``n`` (tau side). The degeneracy pattern of the characteristic values selects
one of six classes A-F; the remaining frame freedom is then spent on fixing
the signs and zeros of the Bloch-vector coefficients ``s_k = e_k.s`` and
``t_k = n_k.t``. The nine numbers (c, s_k, t_k) plus the class label identify
the family.

All canonicalization happens in frame coordinates: an allowed change of frames
is a pair of 3x3 orthogonal maps ``(Ms, Mt)`` with ``Ms diag(c) Mt^T = diag(c)``
acting as ``s_f -> Ms s_f`` and ``t_f -> Mt t_f``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError
from .statecore import DEFAULT_TOL, PauliRep, to_matrix

CLASS_LABELS = ("A", "B", "C", "D", "E", "F")


@dataclass(frozen=True, eq=False)
class CharacteristicDecomposition:
    sign: int
    c: np.ndarray
    e_frame: np.ndarray
    n_frame: np.ndarray

    def reconstruct(self):
        return self.sign * self.e_frame @ np.diag(self.c) @ self.n_frame.T


@dataclass(frozen=True)
class ClassLabel:
    label: str
    sign: int

    @property
    def sign_symbol(self):
        return "+" if self.sign > 0 else "-"

    def __str__(self):
        return f"{self.label}{self.sign_symbol}"


@dataclass(frozen=True, eq=False)
class FamilyDescriptor:
    cls: ClassLabel
    c: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def vector(self):
        """The nine family parameters (c1, c2, c3, s1, s2, s3, t1, t2, t3)."""
        return np.concatenate([self.c, self.s, self.t])

    def matches(self, other, tol=DEFAULT_TOL):
        return (self.cls == other.cls
                and np.allclose(self.vector(), other.vector(), rtol=0, atol=tol))

    def generic_state(self):
        """The state in identity frames with this descriptor's generic form."""
        return PauliRep(self.s, self.t, self.cls.sign * np.diag(self.c))

    def to_dict(self):
        return {"class": self.cls.label, "sign": self.cls.sign_symbol,
                "c": self.c.tolist(), "s": self.s.tolist(), "t": self.t.tolist()}


@dataclass(frozen=True, eq=False)
class Frames:
    e: np.ndarray
    n: np.ndarray


def characteristic_decomposition(c):
    """Exact signed singular-value form of a 3x3 cross dyadic.

    The sign is minus exactly when det C < 0. Frames have det +1. When all
    three characteristic values coincide the e-frame is the identity.
    """
    c = np.asarray(c, dtype=float)
    u, sv, vt = np.linalg.svd(c)
    v = vt.T
    du = np.sign(np.linalg.det(u))
    dv = np.sign(np.linalg.det(v))
    u[:, 2] *= du
    v[:, 2] *= dv
    sign = 1
    if du * dv < 0 and sv[2] != 0.0:
        # C = u diag(s1, s2, -s3) v^T  =>  -C = (u diag(-1, -1, 1)) diag(s) v^T
        u[:, :2] *= -1
        sign = -1
    if sv[0] > 0 and sv[0] - sv[2] <= 1e-12 * sv[0]:
        # isotropic: any shared rotation of both frames is allowed
        v = v @ u.T
        u = np.eye(3)
    return CharacteristicDecomposition(sign, sv, u, v)


def auxiliary_ab(p):
    """(a, b) built from Tr(C^T C), Tr[(C^T C)^2] and det C; a^2 <= b^3 always."""
    ctc = p.c.T @ p.c
    tr1 = np.trace(ctc)
    tr2 = np.trace(ctc @ ctc)
    det = np.linalg.det(p.c)
    a = 9 / 4 * tr1 * tr2 - 5 / 4 * tr1 ** 3 + 27 / 2 * det ** 2
    b = 3 / 2 * tr2 - 1 / 2 * tr1 ** 2
    return float(a), float(b)


def class_from_ab(p, tol=DEFAULT_TOL):
    """Decision table on (a, b, det C), equalities taken relative to the natural scale.

    Exact-arithmetic reference for :func:`class_of`; near class boundaries
    the singular-value route is better conditioned.
    """
    a, b = auxiliary_ab(p)
    tr1 = float(np.trace(p.c.T @ p.c))
    det_c = float(np.linalg.det(p.c))
    if tr1 <= tol:
        return ClassLabel("A", 1)
    det_zero = abs(det_c) <= tol * tr1 ** 1.5
    sign = -1 if det_c < 0 and not det_zero else 1
    if abs(b) <= tol * tr1 ** 2:
        return ClassLabel("A", 1) if det_zero else ClassLabel("B", sign)
    if b ** 3 - a * a > tol * b ** 3:
        return ClassLabel("F", sign)
    if a > 0:
        return ClassLabel("C", 1) if det_zero else ClassLabel("D", sign)
    return ClassLabel("E", sign)


def _degeneracy(cvals, tol):
    c1, c2, c3 = cvals
    ctol = tol * max(1.0, c1)
    if c1 <= ctol:
        return "A"
    if c1 - c3 <= ctol:
        return "B"
    if c2 <= ctol:
        return "C"
    if c2 - c3 <= ctol:
        return "D"
    if c1 - c2 <= ctol:
        return "E"
    return "F"


def _decompose_for_class(c, tol):
    """Decomposition with near-zero c3 folded into the plus subclass."""
    dec = characteristic_decomposition(c)
    label = _degeneracy(dec.c, tol)
    cvals = dec.c.copy()
    e, n = dec.e_frame.copy(), dec.n_frame.copy()
    sign = dec.sign
    if cvals[2] <= tol * max(1.0, cvals[0]):
        cvals[2] = 0.0
        if sign < 0:
            # -e diag(c) n^T = e diag(c1, c2, -c3) (n diag(-1, -1, 1))^T ~ e diag(c1, c2, 0) n'^T
            n[:, :2] *= -1
            sign = 1
    if label == "C":
        cvals[1:] = 0.0
    if label == "A":
        cvals[:] = 0.0
        e, n = np.eye(3), np.eye(3)
    elif label == "B":
        # C = sign c e n^T: move to e = 1, n -> n e^T, an allowed equal rotation.
        n = n @ e.T
        e = np.eye(3)
    return label, sign, cvals, e, n


def class_of(p, tol=DEFAULT_TOL):
    label, sign, _, _, _ = _decompose_for_class(p.c, tol)
    return ClassLabel(label, sign)


def _nonneg(x, tol):
    return x >= -tol


def _align(u, target, det):
    """2x2 orthogonal M with given det mapping u onto |u| * target (target a unit vector)."""
    nu = np.linalg.norm(u)
    w = np.asarray(target, dtype=float)
    w_perp = np.array([-w[1], w[0]])
    if nu == 0.0:
        return np.outer(w, w) + det * np.outer(w_perp, w_perp)
    uh = u / nu
    uh_perp = np.array([-uh[1], uh[0]])
    return np.outer(w, uh) + det * np.outer(w_perp, uh_perp)


def _embed(block, scalar, where):
    """3x3 matrix with a 2x2 block on axes ``where`` and ``scalar`` on the remaining axis."""
    m = np.zeros((3, 3))
    idx = list(where)
    m[np.ix_(idx, idx)] = block
    rest = ({0, 1, 2} - set(idx)).pop()
    m[rest, rest] = scalar
    return m


def _basis_to_axis(v, tol):
    """Rotation M (det +1) with M v = |v| x-hat; identity when v vanishes."""
    nv = np.linalg.norm(v)
    if nv <= tol:
        return np.eye(3)
    b1 = v / nv
    # Gram-Schmidt against fixed axes in x, y, z order
    for axis in np.eye(3):
        w = axis - (axis @ b1) * b1
        if np.linalg.norm(w) > 1e-6:
            b2 = w / np.linalg.norm(w)
            break
    b3 = np.cross(b1, b2)
    return np.array([b1, b2, b3])


def _pick(candidates, keys, tol):
    """Choose the candidate whose listed coefficients are non-negative in priority order."""
    def score(cand):
        s, t = cand[2], cand[3]
        coeff = {"s1": s[0], "s2": s[1], "s3": s[2], "t1": t[0], "t2": t[1], "t3": t[2]}
        return tuple(not _nonneg(coeff[k], tol) for k in keys)
    return min(enumerate(candidates), key=lambda ic: (score(ic[1]), ic[0]))[1]


def _canon_a(sf, tf, tol):
    ms = _basis_to_axis(sf, tol)
    mt = _basis_to_axis(tf, tol)
    return ms, mt


def _canon_b(sf, tf, tol):
    # one shared rotation Q for both frames
    if np.linalg.norm(sf) > tol:
        b1 = sf / np.linalg.norm(sf)
        w = tf - (tf @ b1) * b1
        if np.linalg.norm(w) > tol:
            b3 = w / np.linalg.norm(w)
            b2 = np.cross(b3, b1)
            q = np.array([b1, b2, b3])
        else:
            q = _basis_to_axis(sf, tol)
    else:
        q = _basis_to_axis(tf, tol)
    return q, q


def _canon_c(sf, tf, tol):
    candidates = []
    for eps in (1, -1):
        bs = _align(sf[1:], (0.0, 1.0), eps)
        bt = _align(tf[1:], (0.0, 1.0), eps)
        ms = _embed(bs, eps, (1, 2))
        mt = _embed(bt, eps, (1, 2))
        candidates.append((ms, mt, ms @ sf, mt @ tf))
    best = _pick(candidates, ("s1", "t1"), tol)
    return best[0], best[1]


def _canon_d(sf, tf, tol):
    # degenerate 23 sector: shared block, eps on axis 1 with det(block) = eps
    u = sf[1:]
    target_vec = u if np.linalg.norm(u) > tol else tf[1:]
    candidates = []
    for eps in (1, -1):
        block = _align(target_vec, (0.0, 1.0), eps)
        m = _embed(block, eps, (1, 2))
        candidates.append((m, m, m @ sf, m @ tf))
    best = _pick(candidates, ("s1", "t1", "t2", "t3"), tol)
    return best[0], best[1]


def _canon_e(sf, tf, tol):
    # degenerate 12 sector: shared block, eps on axis 3 with det(block) = eps
    u = sf[:2]
    target_vec = u if np.linalg.norm(u) > tol else tf[:2]
    candidates = []
    for eps in (1, -1):
        block = _align(target_vec, (1.0, 0.0), eps)
        m = _embed(block, eps, (0, 1))
        candidates.append((m, m, m @ sf, m @ tf))
    best = _pick(candidates, ("t2", "s3", "t3"), tol)
    return best[0], best[1]


_F_FLIPS = [np.diag(d) for d in ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))]


def _canon_f(sf, tf, tol):
    candidates = [(m, m, m @ sf, m @ tf) for m in _F_FLIPS]
    best = _pick(candidates, ("s1", "t1", "s2", "t2", "s3", "t3"), tol)
    return best[0], best[1]


_CANON = {"A": _canon_a, "B": _canon_b, "C": _canon_c, "D": _canon_d, "E": _canon_e, "F": _canon_f}


def _check_positive(p, tol):
    w = np.linalg.eigvalsh(to_matrix(p))
    if w[0] < -tol:
        raise InvalidStateError(f"not a positive state (min eigenvalue {w[0]:.3g})", min_eigenvalue=float(w[0]))


def canonicalize(p, tol=DEFAULT_TOL):
    """Family descriptor and the adapted frames ``(e, n)`` of a positive state.

    Class conventions (frame coordinates):
      A: s = (s, 0, 0), t = (t, 0, 0).
      B: s = (s, 0, 0) and t = (t1, 0, t3 >= 0); for s = 0, t = (t, 0, 0).
      C: s = (s1, 0, s3 >= 0), t = (t1, 0, t3 >= 0), s1 >= 0 (or s1 = 0 and t1 >= 0).
      D: s2 = 0, s3 >= 0 (or s = 0 in the 23 sector and t2 = 0, t3 >= 0); the
         remaining discrete choice prefers s1, t1, t2, t3 non-negative in that order.
      E: s2 = 0, s1 >= 0 (or s1 = s2 = 0 and t2 = 0, t1 >= 0); the remaining
         discrete choice prefers t2, s3, t3 non-negative in that order.
      F: of the four 180-degree flips, the one making s1, t1, s2, t2, s3, t3
         non-negative in that priority order.
    Values with |x| <= tol count as non-negative.
    """
    _check_positive(p, tol)
    label, sign, cvals, e, n = _decompose_for_class(p.c, tol)
    sf = e.T @ p.s
    tf = n.T @ p.t
    ms, mt = _CANON[label](sf, tf, tol)
    s_new = ms @ sf
    t_new = mt @ tf
    # frames e' with e'^T s = ms e^T s, i.e. e' = e ms^T
    frames = Frames(e @ ms.T, n @ mt.T)
    s_new = np.where(np.abs(s_new) <= tol * 1e-3, 0.0, s_new)
    t_new = np.where(np.abs(t_new) <= tol * 1e-3, 0.0, t_new)
    desc = FamilyDescriptor(ClassLabel(label, sign), cvals, s_new, t_new)
    return desc, frames


def same_family(p, q, tol=DEFAULT_TOL):
    dp, _ = canonicalize(p, tol)
    dq, _ = canonicalize(q, tol)
    return dp.matches(dq, tol)
