"""Small dense linear algebra for fixed-size Hermitian matrices."""

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 50


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return np.sqrt(np.sum(np.abs(off) ** 2))


def jacobi_eigh(a, tol=OFFDIAG_TOL, max_sweeps=MAX_SWEEPS):
    """Cyclic Jacobi eigen-decomposition of a complex Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` in descending order and the
    matching eigenvectors as the columns of ``v``. Iteration stops once the
    Frobenius norm of the off-diagonal part drops below ``tol``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    if np.max(np.abs(a - a.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-12")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)

    for _ in range(max_sweeps):
        if _offdiag_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-150:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                # rotation angle from tan(2 theta) = 2|apq| / (aqq - app)
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[q, q] = c
                j[p, q] = s * phase
                j[q, p] = -s * np.conj(phase)
                a = j.conj().T @ a @ j
                a[p, q] = a[q, p] = 0.0
                v = v @ j
    else:
        if _offdiag_norm(a) >= tol:
            raise RuntimeError("Jacobi iteration did not converge")

    w = np.diag(a).real
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def eigvalsh_desc(a):
    """Eigenvalues of a Hermitian matrix, descending."""
    return jacobi_eigh(a)[0]


def xlog2x(x):
    """Elementwise ``x * log2(x)`` with the convention ``0 log 0 = 0``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def shannon(p):
    """Shannon entropy in bits of a probability vector."""
    return float(-np.sum(xlog2x(p)))
