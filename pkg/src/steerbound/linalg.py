"""Dense complex-matrix helpers for small dimensions.

Everything here works on plain numpy arrays: matrices are 2-D complex
arrays, kets are 1-D complex arrays of unit norm.
"""

import numpy as np

from .config import TOL


def as_matrix(a):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def as_ket(v, tol=TOL.unit_norm):
    k = np.asarray(v, dtype=complex)
    if k.ndim != 1 or k.size == 0:
        raise ValueError(f"expected a non-empty 1-D vector, got shape {k.shape}")
    norm = np.linalg.norm(k)
    if not np.isfinite(norm) or abs(norm - 1.0) > tol:
        raise ValueError(f"ket must have unit norm, got {norm!r}")
    return k


def as_hermitian(h, tol=TOL.hermitian):
    m = as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"Hermitian matrix must be square, got {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max |H - H^dag| = {dev:.3g})")
    return m


def projector(ket):
    k = np.asarray(ket, dtype=complex)
    return np.outer(k, k.conj())


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def eig_hermitian(h):
    """Eigenvalues in ascending order and the matching orthonormal eigenvectors.

    Returns ``(w, v)`` with ``v[:, i]`` the eigenvector for ``w[i]``.
    """
    m = as_hermitian(h)
    # symmetrise so round-off in the input does not leak into the spectrum
    return np.linalg.eigh(0.5 * (m + m.conj().T))


def min_eig(h):
    m = as_hermitian(h)
    return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])


def max_eig(h):
    m = as_hermitian(h)
    return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[-1])


def is_psd(h, tol=TOL.psd):
    return min_eig(h) >= -tol


def fidelity_pure(sigma, psi):
    """Overlap <psi|sigma|psi> of an operator with a pure state."""
    s = as_matrix(sigma)
    k = np.asarray(psi, dtype=complex)
    if s.shape != (k.size, k.size):
        raise ValueError(f"dimension mismatch: operator {s.shape} vs ket of length {k.size}")
    return float(np.real(k.conj() @ s @ k))


def orthogonal_unit(psi):
    """A unit vector orthogonal to ``psi`` (deterministic choice)."""
    k = np.asarray(psi, dtype=complex)
    if k.size < 2:
        raise ValueError("no orthogonal direction exists in dimension 1")
    e = np.zeros(k.size, dtype=complex)
    e[int(np.argmin(np.abs(k)))] = 1.0
    u = e - (k.conj() @ e) * k
    return u / np.linalg.norm(u)


def haar_ket(dim, rng):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
