"""Standard target bases: computational, Fourier, Weyl-Heisenberg MUBs, Pauli."""

from dataclasses import dataclass

import numpy as np

from .config import TOL


@dataclass(frozen=True)
class BasisFamily:
    """A list of orthonormal bases; ``bases[m][j]`` is the j-th ket of basis m."""

    d: int
    bases: tuple
    label: str = ""

    def __post_init__(self):
        for basis in self.bases:
            if len(basis) != self.d or any(np.shape(k) != (self.d,) for k in basis):
                raise ValueError(f"every basis must hold {self.d} kets of length {self.d}")

    @property
    def n(self):
        return len(self.bases)

    def matrix(self, m):
        """Basis m as a unitary with the kets as columns."""
        return np.column_stack(self.bases[m])


def _family(d, matrices, label):
    return BasisFamily(d, tuple(tuple(np.asarray(u[:, j], dtype=complex) for j in range(d))
                                for u in matrices), label)


def fourier_matrix(d):
    if d < 2:
        raise ValueError("Fourier matrix needs d >= 2")
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def computational(d, n=1):
    return _family(d, [np.eye(d, dtype=complex)] * n, "computational")


def mub_pair(d):
    return _family(d, [np.eye(d, dtype=complex), fourier_matrix(d)], "mub-pair")


def _is_prime(d):
    return d >= 2 and all(d % p for p in range(2, int(d**0.5) + 1))


def wh_mubs(d, n):
    """``n`` mutually unbiased bases in prime dimension ``d``.

    The computational basis comes first, followed by the quadratic-phase
    bases with kets ``exp(2 pi i (m k^2 + j k) / d) / sqrt(d)`` for m = 0, 1, ...
    (m = 0 is the Fourier basis). For d = 2 the Y eigenbasis replaces the
    quadratic-phase construction, which degenerates there.
    """
    if not _is_prime(d):
        raise ValueError(f"unsupported dimension {d}: Weyl-Heisenberg MUBs need prime d")
    if not 2 <= n <= d + 1:
        raise ValueError(f"need 2 <= n <= d+1 bases, got n={n} for d={d}")
    if d == 2:
        s = 1 / np.sqrt(2)
        mats = [np.eye(2, dtype=complex),
                np.array([[s, s], [s, -s]], dtype=complex),
                np.array([[s, s], [1j * s, -1j * s]])]
        return _family(2, mats[:n], f"wh-mubs:{n}")
    k = np.arange(d)
    mats = [np.eye(d, dtype=complex)]
    for m in range(n - 1):
        mats.append(np.exp(2j * np.pi * (m * k[:, None] ** 2 + np.outer(k, k)) / d) / np.sqrt(d))
    return _family(d, mats, f"wh-mubs:{n}")


_PAULI = {
    "x": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "y": np.array([[1, 1], [1j, -1j]], dtype=complex) / np.sqrt(2),
    "z": np.eye(2, dtype=complex),
}


def pauli_bases(order="xyz"):
    """Qubit Pauli eigenbases, each ordered (+1 eigenvector, -1 eigenvector)."""
    return _family(2, [_PAULI[c] for c in order], f"pauli-{order}")


def check_mub(fam, tol=TOL.mub):
    d = fam.d
    mats = [fam.matrix(m) for m in range(fam.n)]
    for u in mats:
        if np.max(np.abs(u.conj().T @ u - np.eye(d))) > tol:
            return False
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            overlaps = np.abs(mats[i].conj().T @ mats[j]) ** 2
            if np.max(np.abs(overlaps - 1.0 / d)) > tol:
                return False
    return True


def family_by_label(label, d, n=None):
    """Resolve a target label such as ``"wh-mubs:3"`` or ``"pauli-xzy"``.

    ``n`` is the number of bases wanted; it is required for ``"computational"``.
    """
    if label == "computational":
        return computational(d, n or 1)
    if label == "mub-pair":
        return mub_pair(d)
    if label.startswith("wh-mubs:"):
        return wh_mubs(d, int(label.split(":", 1)[1]))
    if label.startswith("pauli-"):
        order = label.split("-", 1)[1]
        if d != 2 or not order or set(order) - set("xyz"):
            raise ValueError(f"bad Pauli family {label!r} for d={d}")
        return pauli_bases(order)
    raise ValueError(f"unknown target family {label!r}")


def claims_mub(label):
    return label in ("mub-pair",) or label.startswith("wh-mubs:") or label in ("pauli-xyz", "pauli-xzy")
