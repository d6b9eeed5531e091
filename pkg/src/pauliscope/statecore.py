"""Two-qubit states in Pauli form ``(s, t, C)`` and as 4x4 density matrices.

A state is written as

    P = 1/4 (1 + sigma.s + t.tau + sigma.C.tau)

with ``s`` the Bloch vector of the first qubit (sigma), ``t`` that of the
second qubit (tau) and ``C[a, b] = <sigma_a tau_b>`` the cross dyadic.
Matrices use the computational basis |00>, |01>, |10>, |11> with the sigma
qubit as the left tensor factor.

Generic-form constructors embed the state-adapted axes 1, 2, 3 as x, y, z.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import DomainError, InvalidInputError

DEFAULT_TOL = 1e-9

_I2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
SIGMA = np.array([np.kron(p, _I2) for p in PAULI])
TAU = np.array([np.kron(_I2, p) for p in PAULI])
SIGMA_TAU = np.array([[np.kron(pa, pb) for pb in PAULI] for pa in PAULI])
IDENTITY4 = np.eye(4, dtype=complex)

# Magic-basis representation. sigma_k and tau_k are the imaginary antisymmetric
# matrices read off the printed s,t matrix; products sigma_k tau_k come out
# diagonal with patterns (1,1,-1,-1), (1,-1,1,-1), (-1,1,1,-1).
MAGIC_SIGMA = np.array([
    [[0, -1j, 0, 0], [1j, 0, 0, 0], [0, 0, 0, 1j], [0, 0, -1j, 0]],
    [[0, 0, 1j, 0], [0, 0, 0, 1j], [-1j, 0, 0, 0], [0, -1j, 0, 0]],
    [[0, 0, 0, -1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]],
])
MAGIC_TAU = np.array([
    [[0, -1j, 0, 0], [1j, 0, 0, 0], [0, 0, 0, -1j], [0, 0, 1j, 0]],
    [[0, 0, 1j, 0], [0, 0, 0, -1j], [-1j, 0, 0, 0], [0, 1j, 0, 0]],
    [[0, 0, 0, 1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [-1j, 0, 0, 0]],
])

# Columns are the magic-basis kets in computational coordinates:
#   b1 = i(|01> + |10>)/sqrt2,  b2 = (|00> + |11>)/sqrt2,
#   b3 = i(|00> - |11>)/sqrt2,  b4 = (|01> - |10>)/sqrt2.
# With this choice  B^dagger (sigma_k x 1) B = MAGIC_SIGMA[k]  and likewise for tau.
MAGIC_BASIS = np.array([
    [0, 1, 1j, 0],
    [1j, 0, 0, 1],
    [1j, 0, 0, -1],
    [0, 1, -1j, 0],
]) / np.sqrt(2)


def _vec3(x, name):
    a = np.array(x, dtype=float).reshape(-1)
    if a.shape != (3,):
        raise InvalidInputError(f"{name} must have 3 components, got shape {np.shape(x)}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return a


def _readonly(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PauliRep:
    """Pauli-form parameters of a Hermitian unit-trace 4x4 operator.

    Positivity is not implied; see :func:`pauliscope.criteria.is_positive`.
    """

    s: np.ndarray
    t: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        s = _vec3(self.s, "s")
        t = _vec3(self.t, "t")
        c = np.array(self.c, dtype=float)
        if c.shape != (3, 3):
            raise InvalidInputError(f"C must be 3x3, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InvalidInputError("C has non-finite entries")
        object.__setattr__(self, "s", _readonly(s))
        object.__setattr__(self, "t", _readonly(t))
        object.__setattr__(self, "c", _readonly(c))

    def allclose(self, other, atol=1e-12):
        return (np.allclose(self.s, other.s, rtol=0, atol=atol)
                and np.allclose(self.t, other.t, rtol=0, atol=atol)
                and np.allclose(self.c, other.c, rtol=0, atol=atol))

    def max_abs_diff(self, other):
        return max(np.max(np.abs(self.s - other.s)),
                   np.max(np.abs(self.t - other.t)),
                   np.max(np.abs(self.c - other.c)))

    def to_dict(self):
        return {"s": self.s.tolist(), "t": self.t.tolist(), "C": self.c.tolist()}

    def __repr__(self):
        return f"PauliRep(s={self.s.tolist()}, t={self.t.tolist()}, c={self.c.tolist()})"


@dataclass(frozen=True, eq=False)
class LocalRotation:
    """Independent proper rotations of the sigma and tau frames."""

    r_sigma: np.ndarray
    r_tau: np.ndarray

    def __post_init__(self, tol=DEFAULT_TOL):
        for name in ("r_sigma", "r_tau"):
            r = np.array(getattr(self, name), dtype=float)
            if r.shape != (3, 3) or not np.all(np.isfinite(r)):
                raise InvalidInputError(f"{name} must be a finite 3x3 matrix")
            if np.max(np.abs(r.T @ r - np.eye(3))) > tol:
                raise DomainError(f"{name} is not orthogonal")
            if abs(np.linalg.det(r) - 1.0) > tol:
                raise DomainError(f"{name} is not a proper rotation (det = {np.linalg.det(r):.3g})")
            object.__setattr__(self, name, _readonly(r))

    def then(self, other):
        """Rotation equal to applying ``self`` first and ``other`` second."""
        return LocalRotation(other.r_sigma @ self.r_sigma, other.r_tau @ self.r_tau)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.eye(3))

    @classmethod
    def random(cls, rng):
        r = Rotation.random(2, random_state=rng).as_matrix()
        return cls(r[0], r[1])


def chaotic_state():
    return PauliRep(np.zeros(3), np.zeros(3), np.zeros((3, 3)))


def bell_state():
    """The singlet, ``C = -1``."""
    return PauliRep(np.zeros(3), np.zeros(3), -np.eye(3))


def to_matrix(p):
    m = IDENTITY4 + np.tensordot(p.s, SIGMA, 1) + np.tensordot(p.t, TAU, 1)
    m = m + np.tensordot(p.c, SIGMA_TAU, 2)
    return m / 4


def check_matrix(m, tol=DEFAULT_TOL):
    """Validate shape, finiteness, Hermiticity and unit trace; return a complex copy."""
    m = np.array(m, dtype=complex)
    if m.shape != (4, 4):
        raise InvalidInputError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix has non-finite entries")
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > tol:
        raise InvalidInputError(f"matrix is not Hermitian (max |M - M^dagger| = {herm:.3g})", defect=herm)
    tr = np.trace(m)
    defect = float(abs(tr - 1.0))
    if defect > tol:
        raise InvalidInputError(f"trace is {tr.real:.12g}, not 1 (defect {defect:.3g})", defect=defect)
    return m


def from_matrix(m, tol=DEFAULT_TOL):
    m = check_matrix(m, tol)
    s = np.einsum("aij,ji->a", SIGMA, m).real
    t = np.einsum("aij,ji->a", TAU, m).real
    c = np.einsum("abij,ji->ab", SIGMA_TAU, m).real
    return PauliRep(s, t, c)


def k_operator(p):
    """K = 1 - 4P, Hermitian and traceless; P >= 0 iff K <= 1."""
    return IDENTITY4 - 4 * to_matrix(p)


def paper_basis_matrix(p):
    """Matrix of sigma.s + t.tau + sigma.C.tau in the magic basis ``MAGIC_BASIS``.

    Built from the integer tables directly, so entries are exact combinations of
    the inputs. Spectrum equals that of ``-k_operator(p)``.
    """
    m = np.tensordot(p.s, MAGIC_SIGMA, 1) + np.tensordot(p.t, MAGIC_TAU, 1)
    for a in range(3):
        for b in range(3):
            if p.c[a, b] != 0:
                m = m + p.c[a, b] * (MAGIC_SIGMA[a] @ MAGIC_TAU[b])
    return m


def to_magic_basis(m):
    return MAGIC_BASIS.conj().T @ m @ MAGIC_BASIS


def pure_state(p_param):
    """Generic pure state 1/4 (1 + p s1 - p t1 - s1t1 - q s2t2 - q s3t3), q = sqrt(1 - p^2)."""
    if not 0.0 <= p_param <= 1.0:
        raise DomainError(f"pure-state parameter must lie in [0, 1], got {p_param}")
    q = np.sqrt(1.0 - p_param ** 2)
    return PauliRep([p_param, 0, 0], [-p_param, 0, 0], np.diag([-1.0, -q, -q]))


def werner_state(x):
    """1/4 (1 - x sigma.tau): a Bell-weight-x mixture with the chaotic state."""
    if not -1.0 / 3.0 - DEFAULT_TOL <= x <= 1.0:
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {x}")
    return PauliRep(np.zeros(3), np.zeros(3), -x * np.eye(3))


def rank2_state(x, theta):
    if not -1.0 < x < 1.0:
        raise DomainError(f"rank-2 family needs -1 < x < 1, got {x}")
    sn, cs = np.sin(theta), np.cos(theta)
    return PauliRep([0, 0, sn], [0, 0, x * sn], np.diag([cs, -x * cs, x]))


def product_state(s, t):
    s = _vec3(s, "s")
    t = _vec3(t, "t")
    for name, v in (("s", s), ("t", t)):
        if np.linalg.norm(v) > 1.0 + DEFAULT_TOL:
            raise DomainError(f"Bloch vector {name} is longer than 1 ({np.linalg.norm(v):.6g})")
    return PauliRep(s, t, np.outer(s, t))


def apply_local(p, r):
    if not isinstance(r, LocalRotation):
        r = LocalRotation(*r)
    return PauliRep(r.r_sigma @ p.s, r.r_tau @ p.t, r.r_sigma @ p.c @ r.r_tau.T)


def swap_qubits(p):
    return PauliRep(p.t, p.s, p.c.T)


def purity_defect(p):
    """Frobenius norm of P(1 - P); zero exactly for rank-1 projectors."""
    m = to_matrix(p)
    return float(np.linalg.norm(m - m @ m))


MEASURES = ("hilbert-schmidt", "rank-constrained", "pauli-rejection")


def random_density_matrix(rng, measure="hilbert-schmidt", k=None):
    if measure == "hilbert-schmidt":
        k = 4
    elif measure == "rank-constrained":
        if k not in (1, 2, 3, 4):
            raise DomainError(f"rank-constrained sampling needs k in 1..4, got {k!r}")
    elif measure == "pauli-rejection":
        return to_matrix(_pauli_rejection(rng))
    else:
        raise DomainError(f"unknown measure {measure!r}; choose from {MEASURES}")
    g = rng.standard_normal((4, k)) + 1j * rng.standard_normal((4, k))
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return (m + m.conj().T) / 2


def _pauli_rejection(rng, batch=1 << 16):
    # acceptance is about 1e-6; A2 <= 6, i.e. s^2 + t^2 + |C|^2 <= 3, is necessary
    # for positivity and cheaply removes ~96% of draws before any eigensolve
    while True:
        coeffs = rng.uniform(-1.0, 1.0, size=(batch, 15))
        coeffs = coeffs[np.einsum("na,na->n", coeffs, coeffs) <= 3.0]
        mats = (IDENTITY4
                + np.einsum("na,aij->nij", coeffs[:, :3], SIGMA)
                + np.einsum("na,aij->nij", coeffs[:, 3:6], TAU)
                + np.einsum("nab,abij->nij", coeffs[:, 6:].reshape(-1, 3, 3), SIGMA_TAU)) / 4
        ok = np.flatnonzero(np.linalg.eigvalsh(mats)[:, 0] >= 0.0)
        if ok.size:
            x = coeffs[ok[0]]
            return PauliRep(x[:3], x[3:6], x[6:].reshape(3, 3))


def random_state(seed, measure="hilbert-schmidt", k=None):
    """Deterministic random state for a given ``(seed, measure, k)``.

    hilbert-schmidt: G G^dagger / Tr with G a 4x4 complex Ginibre matrix.
    rank-constrained: same with a 4xk block, so the rank is at most k.
    pauli-rejection: (s, t, C) uniform in [-1, 1]^15, keeping the first positive draw.
    """
    rng = np.random.default_rng(seed)
    if measure == "pauli-rejection":
        return _pauli_rejection(rng)
    return from_matrix(random_density_matrix(rng, measure, k))
