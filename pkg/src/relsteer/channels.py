"""Unruh acceleration channel, local filtering and their closed forms."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateFilter, DomainError
from .qstate import DensityMatrix4, generic_pure, werner

R_MAX = math.pi / 4
FILTER_N_MIN = 1e-14


@dataclass(frozen=True)
class AccelerationParams:
    """Acceleration angles r_a, r_b in [0, pi/4] (tan r = exp(-pi w c / a))."""

    r_a: float = 0.0
    r_b: float = 0.0

    def __post_init__(self):
        for name in ("r_a", "r_b"):
            v = getattr(self, name)
            if not 0.0 <= v <= R_MAX + 1e-12:
                raise DomainError(f"{name}={v} outside [0, pi/4]")

    @property
    def C_a(self):
        return math.cos(self.r_a)

    @property
    def C_b(self):
        return math.cos(self.r_b)

    @property
    def S_a(self):
        return math.sin(self.r_a)

    @property
    def S_b(self):
        return math.sin(self.r_b)


@dataclass(frozen=True)
class FilterParams:
    alpha_a: float = 0.5
    alpha_b: float = 0.5

    def __post_init__(self):
        for name in ("alpha_a", "alpha_b"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"{name}={v} outside the open interval (0, 1)")

    @classmethod
    def equal(cls, alpha):
        return cls(alpha, alpha)

    @staticmethod
    def operator(alpha):
        return np.diag([math.sqrt(alpha), math.sqrt(1.0 - alpha)])


@dataclass(frozen=True)
class PhysicalModeParams:
    a_phys: float
    omega: float
    c_light: float = 299_792_458.0

    def __post_init__(self):
        for name in ("a_phys", "omega", "c_light"):
            v = getattr(self, name)
            if not v > 0.0:
                raise DomainError(f"{name} must be positive, got {v}")


def unruh_apply(rho, acc):
    """Accelerate both qubits, written out element by element."""
    r = np.asarray(rho)
    Ca, Cb, Sa2, Sb2 = acc.C_a, acc.C_b, acc.S_a**2, acc.S_b**2
    r11, r22, r33, r44 = r[0, 0], r[1, 1], r[2, 2], r[3, 3]
    r12, r13, r14 = r[0, 1], r[0, 2], r[0, 3]
    r23, r24, r34 = r[1, 2], r[1, 3], r[2, 3]

    out = np.empty((4, 4), dtype=complex)
    out[0, 0] = Ca**2 * Cb**2 * r11
    out[0, 1] = Ca**2 * Cb * r12
    out[0, 2] = Ca * Cb**2 * r13
    out[0, 3] = Ca * Cb * r14
    out[1, 1] = Ca**2 * (r22 + Sb2 * r11)
    out[1, 2] = Ca * Cb * r23
    out[1, 3] = Ca * (r24 + Sb2 * r13)
    out[2, 2] = Cb**2 * (r33 + Sa2 * r11)
    out[2, 3] = Cb * (r34 + Sa2 * r12)
    out[3, 3] = Sa2 * (r22 + Sb2 * r11) + Sb2 * r33 + r44
    for i in range(4):
        for j in range(i):
            out[i, j] = np.conj(out[j, i])
    return DensityMatrix4._wrap(out)


def unruh_kraus(r):
    """Single-qubit Kraus pair: amplitude damping of |0> into |1> with sin^2 r."""
    k0 = np.array([[math.cos(r), 0.0], [0.0, 1.0]])
    k1 = np.array([[0.0, 0.0], [math.sin(r), 0.0]])
    return k0, k1


def unruh_apply_kraus(rho, acc):
    r = np.asarray(rho)
    out = np.zeros((4, 4), dtype=complex)
    for ka in unruh_kraus(acc.r_a):
        for kb in unruh_kraus(acc.r_b):
            k = np.kron(ka, kb)
            out += k @ r @ k.conj().T
    return DensityMatrix4._wrap(out)


def _accelerated_x_family(d11, d22, d33, d44, z14, z23, acc):
    # states whose only coherences are |00><11| and |01><10|
    Ca, Cb, Sa2, Sb2 = acc.C_a, acc.C_b, acc.S_a**2, acc.S_b**2
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = Ca**2 * Cb**2 * d11
    out[1, 1] = Ca**2 * (d22 + Sb2 * d11)
    out[2, 2] = Cb**2 * (d33 + Sa2 * d11)
    out[3, 3] = Sa2 * (d22 + Sb2 * d11) + Sb2 * d33 + d44
    out[0, 3] = Ca * Cb * z14
    out[1, 2] = Ca * Cb * z23
    out[3, 0] = np.conj(out[0, 3])
    out[2, 1] = np.conj(out[1, 2])
    return out


def accelerated_werner(w, acc):
    """Closed form of the accelerated Werner-family state."""
    werner(w)  # raises NotPositive for unphysical triples
    c11, c22, c33 = w.diag
    A11 = (1 + c33) / 4
    A22 = (1 - c33) / 4
    # |00><11| carries (c11 - c22)/4 and |01><10| carries (c11 + c22)/4
    A14 = (c11 - c22) / 4
    A23 = (c11 + c22) / 4
    out = _accelerated_x_family(A11, A22, A22, A11, A14, A23, acc)
    return DensityMatrix4._wrap(out)


def accelerated_generic_pure(f, acc):
    """Closed form of the accelerated generic pure state."""
    q, p = f.q, f.p
    B11 = (1 - q) / 4
    B22 = (1 + q) / 4
    B14, B23, B12 = -B11, -B22, p / 4
    Ca, Cb, Sa2, Sb2 = acc.C_a, acc.C_b, acc.S_a**2, acc.S_b**2
    out = _accelerated_x_family(B11, B22, B22, B11, B14, B23, acc)
    out[0, 1] = -B12 * Ca**2 * Cb
    out[1, 3] = B12 * Ca * (1 + Sb2)
    out[0, 2] = B12 * Ca * Cb**2
    out[2, 3] = -B12 * Cb * (1 + Sa2)
    for i, j in ((0, 1), (1, 3), (0, 2), (2, 3)):
        out[j, i] = np.conj(out[i, j])
    return DensityMatrix4._wrap(out)


def filter_apply(rho, fp):
    """Local filter W_a x W_b followed by renormalisation.

    Returns ``(filtered_state, N)`` where ``N`` is the success probability.
    """
    k = np.kron(FilterParams.operator(fp.alpha_a), FilterParams.operator(fp.alpha_b))
    m = k @ np.asarray(rho) @ k.conj().T
    n = float(np.trace(m).real)
    if n < FILTER_N_MIN:
        raise DegenerateFilter(f"filter success probability {n:.3g} below {FILTER_N_MIN:g}")
    m = m / n
    return DensityMatrix4._wrap(0.5 * (m + m.conj().T)), n


def r_from_physical(pm):
    return math.atan(math.exp(-math.pi * pm.omega * pm.c_light / pm.a_phys))


def entropic_bound(n):
    """Right-hand side of the entropic steering inequality for even dimension n."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2 or n % 2:
        raise DomainError(f"N must be an even integer >= 2, got {n!r}")
    h = n // 2
    return h * math.log2(h) + (1 + h) * math.log2(1 + h)
