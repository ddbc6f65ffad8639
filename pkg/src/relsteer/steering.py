"""Entropic steering functionals built on Pauli measurement statistics."""

from dataclasses import dataclass, asdict

import numpy as np

from .errors import NegativeProbability
from .linalg import shannon, xlog2x
from .qstate import PAULI

AXES = ("x", "y", "z")
A_STEERS_B = "A_steers_B"
B_STEERS_A = "B_steers_A"
DIRECTIONS = (A_STEERS_B, B_STEERS_A)

I_MAX = 6.0
PROB_TOL = 1e-12
CONSISTENCY_TOL = 1e-9

# Index maps from the joint ordering (++, +-, -+, --) onto the outcome
# ordering used by the closed-form coefficients. For y the first pair is
# (--, ++) because the closed form carries +2 Im terms with a minus sign
# relative to the sigma_y eigenbasis.
_JOINT_ORDER = {"x": (0, 3, 1, 2), "y": (3, 0, 1, 2), "z": (0, 1, 2, 3)}
_MARGINAL_ORDER = {"x": (0, 1), "y": (1, 0), "z": (0, 1)}


def _projectors(pauli):
    # eigenprojectors for eigenvalues +1, -1
    w, v = np.linalg.eigh(pauli)
    order = np.argsort(w)[::-1]
    return [np.outer(v[:, k], v[:, k].conj()) for k in order]


_PROJ = {ax: _projectors(P) for ax, P in zip(AXES, PAULI)}
_JOINT_OPS = {
    ax: [np.kron(pa, pb) for pa in _PROJ[ax] for pb in _PROJ[ax]] for ax in AXES
}


@dataclass(frozen=True)
class MeasurementDistribution:
    axis: str
    joint: tuple
    marginal_a: tuple
    marginal_b: tuple


@dataclass(frozen=True)
class SteeringReport:
    I_ab: float
    I_ba: float
    S_ab: float
    S_ba: float
    delta: float

    def as_dict(self):
        return asdict(self)


def _clamp(p):
    if np.any(p < -PROB_TOL):
        raise NegativeProbability(f"negative outcome probability {p.min():.3g}")
    return np.clip(p, 0.0, 1.0)


def pauli_distribution(rho, axis):
    """Joint and marginal outcome probabilities for the same Pauli on both sides."""
    if axis not in _JOINT_OPS:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    a = np.asarray(rho)
    joint = np.array([np.trace(op @ a).real for op in _JOINT_OPS[axis]])
    joint = _clamp(joint)
    ma = (joint[0] + joint[1], joint[2] + joint[3])
    mb = (joint[0] + joint[2], joint[1] + joint[3])
    return MeasurementDistribution(axis, tuple(joint), ma, mb)


def closed_form_P(rho):
    """Explicit outcome coefficients in terms of the matrix elements.

    Returns a dict with keys ``"ab"``, ``"a"``, ``"b"``; each maps an axis to
    the coefficient array (4 entries summing to 4 for ``"ab"``, 2 entries
    summing to 2 for the single-qubit ones).
    """
    r = np.asarray(rho)
    r12, r13, r14 = r[0, 1], r[0, 2], r[0, 3]
    r23, r24, r34 = r[1, 2], r[1, 3], r[2, 3]
    re, im = np.real, np.imag

    Pab = {
        "x": np.array([
            1 + 2 * re(r12 + r13 + r14 + r23 + r24 + r34),
            1 - 2 * re(r12 + r13 - r14 - r23 + r24 + r34),
            1 - 2 * re(r12 - r13 + r14 + r23 - r24 + r34),
            1 + 2 * re(r12 - r13 - r14 - r23 - r24 + r34),
        ]),
        "y": np.array([
            1 + 2 * re(r23 - r14) + 2 * im(r12 + r13 + r24 + r34),
            1 + 2 * re(r23 - r14) - 2 * im(r12 + r13 + r24 + r34),
            1 - 2 * re(r23 - r14) + 2 * im(r12 - r13 - r24 + r34),
            1 - 2 * re(r23 - r14) - 2 * im(r12 - r13 - r24 + r34),
        ]),
        "z": 4 * np.diag(r).real.copy(),
    }
    za = re(r[0, 0] + r[1, 1] - r[2, 2] - r[3, 3])
    zb = re(r[0, 0] - r[1, 1] + r[2, 2] - r[3, 3])
    Pa = {
        "x": np.array([1 + 2 * re(r13 + r24), 1 - 2 * re(r13 + r24)]),
        "y": np.array([1 + 2 * im(r13 + r24), 1 - 2 * im(r13 + r24)]),
        "z": np.array([1 + za, 1 - za]),
    }
    Pb = {
        "x": np.array([1 + 2 * re(r12 + r34), 1 - 2 * re(r12 + r34)]),
        "y": np.array([1 + 2 * im(r12 + r34), 1 - 2 * im(r12 + r34)]),
        "z": np.array([1 + zb, 1 - zb]),
    }
    return {"ab": Pab, "a": Pa, "b": Pb}


def reorder_joint(dist):
    """Joint distribution of ``dist`` in the closed-form outcome ordering."""
    return np.array(dist.joint)[list(_JOINT_ORDER[dist.axis])]


def reorder_marginal(marginal, axis):
    return np.array(marginal)[list(_MARGINAL_ORDER[axis])]


def _check_direction(direction):
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def conditional_entropy_sum(rho, direction=A_STEERS_B):
    """Sum over x, y, z of H(joint) - H(marginal of the measuring party)."""
    _check_direction(direction)
    total = 0.0
    for ax in AXES:
        d = pauli_distribution(rho, ax)
        cond = d.marginal_a if direction == A_STEERS_B else d.marginal_b
        total += shannon(d.joint) - shannon(cond)
    return total


def steering_I(rho, direction=A_STEERS_B):
    """Steering functional from the closed-form coefficients.

    I > 2 certifies steering in the given direction; I = 6 for Bell states.
    """
    _check_direction(direction)
    return _I_from_P(closed_form_P(rho), direction)


def _I_from_P(P, direction):
    cond = P["a"] if direction == A_STEERS_B else P["b"]
    joint = np.stack([P["ab"][ax] for ax in AXES])
    marg = np.stack([cond[ax] for ax in AXES])
    joint_term = np.sum(xlog2x(4 * _clamp(joint / 4)))
    cond_term = np.sum(xlog2x(2 * _clamp(marg / 2)))
    return float(0.5 * joint_term - cond_term)


def steerability(I):
    """Normalised degree max{0, (I - 2)/(I_max - 2)}."""
    s = max(0.0, (I - 2.0) / (I_MAX - 2.0))
    if s > 1.0 + CONSISTENCY_TOL:
        raise ArithmeticError(f"steerability {s} exceeds 1; I={I} is inconsistent")
    return s


def steerability_report(rho):
    P = closed_form_P(rho)
    I_ab = _I_from_P(P, A_STEERS_B)
    I_ba = _I_from_P(P, B_STEERS_A)
    S_ab = steerability(I_ab)
    S_ba = steerability(I_ba)
    return SteeringReport(I_ab, I_ba, S_ab, S_ba, abs(S_ab - S_ba))
