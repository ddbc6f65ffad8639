"""Two-qubit density matrices: construction, validation and reduction.

Basis order is |00>, |01>, |10>, |11> with Alice as the first (left) qubit.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError, InvalidState, NotHermitian, NotPositive
from .linalg import HERMITIAN_TOL, eigvalsh_desc

TRACE_TOL = 1e-10
PSD_TOL = -1e-10

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated 4x4 two-qubit density operator.

    Construction checks Hermiticity (1e-12), unit trace (1e-10) and
    positivity (eigenvalues >= -1e-10).
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _readonly(self.entries))
        _check_basic(self.entries)
        w = eigvalsh_desc(self.entries)
        if w[-1] < PSD_TOL:
            raise NotPositive(f"smallest eigenvalue {w[-1]:.3g} < {PSD_TOL:g}")

    @classmethod
    def _wrap(cls, entries):
        # channel outputs: PSD holds by construction, skip the eigensolve
        a = _readonly(entries)
        _check_basic(a)
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", a)
        return obj

    def __getitem__(self, idx):
        return self.entries[idx]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def element(self, i, j):
        """1-based element rho_ij, the indexing used in the formulas."""
        return self.entries[i - 1, j - 1]

    def purity(self):
        return float(np.trace(self.entries @ self.entries).real)

    def allclose(self, other, atol=1e-12):
        return bool(np.allclose(self.entries, np.asarray(other), rtol=0.0, atol=atol))


def _check_basic(a):
    if a.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidState("non-finite entries")
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
        raise NotHermitian("density matrix is not Hermitian within 1e-12")
    tr = np.trace(a)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidState(f"trace {tr.real:.12g} differs from 1")


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Bloch vectors ``s`` (Alice), ``t`` (Bob) and correlation matrix ``c``."""

    s: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t: np.ndarray = field(default_factory=lambda: np.zeros(3))
    c: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        for name, shape in (("s", (3,)), ("t", (3,)), ("c", (3, 3))):
            v = np.array(getattr(self, name), dtype=float)
            if v.shape != shape:
                raise DomainError(f"{name} must have shape {shape}, got {v.shape}")
            if not np.all(np.isfinite(v)) or np.any(np.abs(v) > 1.0 + 1e-12):
                raise DomainError(f"components of {name} must lie in [-1, 1]")
            v.flags.writeable = False
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class WernerParams:
    c11: float
    c22: float
    c33: float

    def __post_init__(self):
        for name in ("c11", "c22", "c33"):
            v = getattr(self, name)
            if not -1.0 <= v <= 1.0:
                raise DomainError(f"{name}={v} outside [-1, 1]")

    @property
    def diag(self):
        return (self.c11, self.c22, self.c33)


@dataclass(frozen=True)
class PureFamilyParams:
    """Generic pure family parameters with ``p^2 + q^2 = 1``.

    Only ``q`` is required; ``p`` defaults to ``sqrt(1 - q^2)``. Use
    :meth:`from_p` when ``p`` is the swept quantity so it is kept exactly.
    """

    q: float
    p: float = None

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise DomainError(f"q={self.q} outside [0, 1]")
        if self.p is None:
            object.__setattr__(self, "p", math.sqrt(max(0.0, 1.0 - self.q * self.q)))
        elif not 0.0 <= self.p <= 1.0 or abs(self.p**2 + self.q**2 - 1.0) > 1e-12:
            raise DomainError(f"p={self.p}, q={self.q} violate p^2 + q^2 = 1")

    @classmethod
    def from_p(cls, p):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"p={p} outside [0, 1]")
        return cls(math.sqrt(1.0 - p * p), p)


def from_bloch(d):
    """rho = (I + s.sigma x I + I x t.tau + sum c_ij sigma_i x tau_j) / 4."""
    rho = np.kron(I2, I2).astype(complex)
    for i in range(3):
        rho = rho + d.s[i] * np.kron(PAULI[i], I2) + d.t[i] * np.kron(I2, PAULI[i])
        for j in range(3):
            if d.c[i, j] != 0.0:
                rho = rho + d.c[i, j] * np.kron(PAULI[i], PAULI[j])
    return DensityMatrix4(rho / 4.0)


def to_bloch(rho):
    a = np.asarray(rho)
    s = np.array([np.trace(np.kron(P, I2) @ a) for P in PAULI])
    t = np.array([np.trace(np.kron(I2, P) @ a) for P in PAULI])
    c = np.array([[np.trace(np.kron(P, Q) @ a) for Q in PAULI] for P in PAULI])
    for name, v in (("s", s), ("t", t), ("c", c)):
        if np.max(np.abs(v.imag)) > 1e-12:
            raise InvalidState(f"imaginary residue in {name}")
    return BlochDecomposition(np.clip(s.real, -1, 1), np.clip(t.real, -1, 1), np.clip(c.real, -1, 1))


def werner(w):
    return from_bloch(BlochDecomposition(c=np.diag(w.diag)))


def generic_pure(f):
    """Pure family interpolating between the singlet (q=1) and |+>|-> (q=0)."""
    p, q = f.p, f.q
    rho = (
        np.kron(I2, I2)
        - np.kron(SX, SX)
        + p * (np.kron(SX, I2) - np.kron(I2, SX))
        - q * (np.kron(SY, SY) + np.kron(SZ, SZ))
    ) / 4.0
    return DensityMatrix4(rho)


def singlet():
    return werner(WernerParams(-1.0, -1.0, -1.0))


def maximally_mixed():
    return DensityMatrix4(np.eye(4) / 4.0)


def product_state(index):
    """Computational basis projector |index><index|, index in 0..3."""
    a = np.zeros((4, 4), dtype=complex)
    a[index, index] = 1.0
    return DensityMatrix4(a)


def partial_trace(rho, keep):
    """Reduced 2x2 state of qubit ``keep`` ('A' or 'B')."""
    t = np.asarray(rho).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ajbj->ab", t)
    if keep == "B":
        return np.einsum("iaib->ab", t)
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


def eigenvalues_hermitian4(rho):
    a = np.asarray(rho)
    if a.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 matrix, got shape {a.shape}")
    return eigvalsh_desc(a)


def random_state(rng):
    """Random valid state G G^dag / Tr(G G^dag) with complex Gaussian G."""
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    return DensityMatrix4(m / np.trace(m).real)
