"""Steering functionals, trusted targets and the ideal LHS bound."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .config import ENUMERATION_CAP, TOL
from .linalg import as_ket, as_matrix, is_psd


class EnumerationInfeasible(ValueError):
    """Too many deterministic Alice responses to enumerate."""


@dataclass(frozen=True)
class SteeringFunctional:
    """Linear functional sum c[a,b,x,y] p(a,b|x,y) with c >= 0.

    ``terms`` holds sparse ``(a, b, x, y, value)`` records with 0-based
    indices. ``back_map = (scale, offset)`` converts a value of this form
    back to the correlator expression it was derived from.
    """

    d: int
    n_x: int
    n_y: int
    terms: tuple
    back_map: tuple | None = None

    def __post_init__(self):
        if min(self.d, self.n_x, self.n_y) < 1:
            raise ValueError("d, n_x and n_y must be positive")
        merged = {}
        for a, b, x, y, c in self.terms:
            a, b, x, y = int(a), int(b), int(x), int(y)
            if not (0 <= a < self.d and 0 <= b < self.d and 0 <= x < self.n_x and 0 <= y < self.n_y):
                raise ValueError(f"coefficient index out of range: {(a, b, x, y)}")
            c = float(c)
            if not np.isfinite(c) or c < 0:
                raise ValueError(f"coefficients must be nonnegative, got {c} at {(a, b, x, y)}")
            merged[(a, b, x, y)] = merged.get((a, b, x, y), 0.0) + c
        terms = tuple((*k, v) for k, v in sorted(merged.items()) if v != 0.0)
        if not terms:
            raise ValueError("functional needs at least one nonzero coefficient")
        object.__setattr__(self, "terms", terms)
        if self.back_map is not None:
            object.__setattr__(self, "back_map", tuple(float(v) for v in self.back_map))

    def dense(self):
        """Coefficient tensor indexed ``[a, b, x, y]``."""
        c = np.zeros((self.d, self.d, self.n_x, self.n_y))
        for a, b, x, y, v in self.terms:
            c[a, b, x, y] = v
        return c

    def support(self):
        """Boolean ``[b, y]`` mask of trusted operators with a nonzero coefficient."""
        return self.dense().sum(axis=(0, 2)) > 0

    def weights(self, assignment):
        """Bob-side weights ``w[b, y] = sum_x c[a(x), b, x, y]``."""
        c = self.dense()
        return sum(c[a, :, x, :] for x, a in enumerate(assignment))

    def to_correlator(self, value):
        if self.back_map is None:
            return value
        scale, offset = self.back_map
        return scale * value + offset


@dataclass(frozen=True)
class TargetMeasurements:
    """Rank-one target kets ``kets[y][b]``; ``None`` marks a missing operator."""

    kets: tuple

    def __post_init__(self):
        rows, dim = [], None
        for row in self.kets:
            out = []
            for k in row:
                if k is None:
                    out.append(None)
                    continue
                k = as_ket(k, tol=TOL.spec_unit_norm)
                if dim is None:
                    dim = k.size
                elif k.size != dim:
                    raise ValueError("all target kets must share one Hilbert-space dimension")
                out.append(k)
            rows.append(tuple(out))
        if dim is None:
            raise ValueError("at least one target ket is required")
        object.__setattr__(self, "kets", tuple(rows))

    @classmethod
    def from_family(cls, fam):
        return cls(tuple(tuple(basis) for basis in fam.bases))

    @property
    def dim(self):
        return next(k.size for row in self.kets for k in row if k is not None)

    @property
    def n_y(self):
        return len(self.kets)

    def ket(self, b, y):
        row = self.kets[y]
        return row[b] if b < len(row) else None

    def projectors(self, d):
        """Array ``[b, y, i, j]`` of target projectors, zero where missing."""
        dim = self.dim
        out = np.zeros((d, self.n_y, dim, dim), dtype=complex)
        for y in range(self.n_y):
            for b in range(d):
                k = self.ket(b, y)
                if k is not None:
                    out[b, y] = np.outer(k, k.conj())
        return out

    def check_compatible(self, f):
        if self.n_y != f.n_y:
            raise ValueError(f"targets list {self.n_y} inputs but the functional has n_y={f.n_y}")
        for b, y in zip(*np.nonzero(f.support())):
            if self.ket(b, y) is None:
                raise ValueError(f"no target ket for outcome b={b}, input y={y}")


@dataclass(frozen=True)
class ImprecisionProfile:
    """Imprecision ``eps[b, y]`` of each trusted measurement operator."""

    eps: np.ndarray

    def __post_init__(self):
        e = np.array(self.eps, dtype=float)
        if e.ndim != 2:
            raise ValueError("imprecision profile must be a 2-D array indexed [b, y]")
        if np.any(~np.isfinite(e)) or np.any(e < 0) or np.any(e > 1):
            raise ValueError("imprecision parameters must lie in [0, 1]")
        e.setflags(write=False)
        object.__setattr__(self, "eps", e)

    @classmethod
    def uniform(cls, f, epsilon):
        return cls(np.full((f.d, f.n_y), float(epsilon)))

    def is_uniform_on(self, mask):
        vals = self.eps[mask]
        return vals.size == 0 or np.all(vals == vals[0])


@dataclass
class BoundResult:
    value: float
    method: str
    mu_star: float | None = None
    validity: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ValueError("bound value must be finite")
        if self.mu_star is not None and self.mu_star < -1:
            raise ValueError("mu_star must be >= -1")

    def as_record(self):
        rec = {"value": float(self.value), "method": self.method,
               "mu_star": None if self.mu_star is None else float(self.mu_star)}
        rec.update({f"valid_{k}": bool(v) for k, v in self.validity.items()})
        for k, v in self.extra.items():
            if isinstance(v, (int, float, str, bool)) or v is None:
                rec[k] = v
            elif isinstance(v, (tuple, list)):
                rec[k] = [int(a) if isinstance(a, (int, np.integer)) else a for a in v]
        return rec


def chi(f):
    """Algebraic ceiling sum_x max_a sum_{b,y} c[a,b,x,y]."""
    return float(f.dense().sum(axis=(1, 3)).max(axis=0).sum())


def _assignment_weights(f, assignments):
    """Weights ``[n, b, y]`` for a block of assignments given as an int array ``[n, n_x]``."""
    c = f.dense()
    w = np.zeros((len(assignments), f.d, f.n_y))
    for x in range(f.n_x):
        w += c[assignments[:, x], :, x, :]
    return w


def iter_assignment_blocks(f, block=1 << 15):
    """All deterministic responses a(x) in lexicographic order, in blocks."""
    it = itertools.product(range(f.d), repeat=f.n_x)
    while True:
        chunk = list(itertools.islice(it, block))
        if not chunk:
            return
        yield np.array(chunk, dtype=int).reshape(len(chunk), f.n_x)


def assignment_count(f):
    return f.d ** f.n_x


def ideal_values(f, t, assignments):
    """Top eigenvalue of sum_{b,y} w[b,y] P[b,y] for each assignment."""
    proj = t.projectors(f.d)
    w = _assignment_weights(f, assignments)
    m = np.einsum("nby,byij->nij", w, proj)
    return np.linalg.eigvalsh(m)[:, -1], w


def beta0_exact(f, t, cap=ENUMERATION_CAP):
    """Exact LHS bound with ideal trusted measurements.

    LHS models are convex mixtures of deterministic Alice responses paired
    with a state for Bob, so the maximum is attained on one such branch and
    equals the largest top eigenvalue of sum_{x,b,y} c[a(x),b,x,y] B[b|y]
    over all d**n_x responses.
    """
    t.check_compatible(f)
    count = assignment_count(f)
    if count > cap:
        raise EnumerationInfeasible(
            f"enumeration infeasible: {count} deterministic responses exceed the cap of {cap}; "
            "use the seesaw lower bound instead")
    best, best_a = -np.inf, None
    for block in iter_assignment_blocks(f):
        vals, _ = ideal_values(f, t, block)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_a = float(vals[i]), tuple(int(a) for a in block[i])
    w = f.weights(best_a)
    m = np.einsum("by,byij->ij", w, t.projectors(f.d))
    _, vecs = np.linalg.eigh(m)
    return BoundResult(best, "exact-enumeration",
                       extra={"assignment": best_a, "state": vecs[:, -1], "enumerated": count})


def evaluate(f, alice, bob, rho):
    """Value of the functional on an explicit quantum strategy.

    ``alice[x][a]`` and ``bob[y][b]`` are operators (``None`` on Bob's side
    counts as the zero operator); ``rho`` acts on the Alice (x) Bob space.
    """
    rho = as_matrix(rho)
    if len(alice) != f.n_x or len(bob) != f.n_y:
        raise ValueError("need one measurement per input on each side")
    da = as_matrix(alice[0][0]).shape[0]
    db = next(as_matrix(op).shape[0] for row in bob for op in row if op is not None)
    if rho.shape != (da * db, da * db):
        raise ValueError(f"state has shape {rho.shape}, expected {(da * db, da * db)}")
    if abs(np.trace(rho) - 1) > TOL.trace or not is_psd(rho):
        raise ValueError("state must be positive semidefinite with unit trace")
    r = rho.reshape(da, db, da, db)
    total = 0.0
    for a, b, x, y, c in f.terms:
        if a >= len(alice[x]) or b >= len(bob[y]) or bob[y][b] is None:
            continue
        A, B = as_matrix(alice[x][a]), as_matrix(bob[y][b])
        if A.shape != (da, da) or B.shape != (db, db):
            raise ValueError("measurement operator dimension mismatch")
        # Tr((A (x) B) rho) without forming the Kronecker product
        total += c * np.real(np.einsum("ji,lk,ikjl->", A, B, r))
    return float(total)


def correlator_to_probability_form(signs, n_x, n_y, d=2):
    """Turn a +-1 correlator expression sum s[x,y] <A_x (x) B_y> into probability form.

    For binary outcomes <A_x B_y> = 2 p(a = b xor s) - 1, so the correlator
    value equals ``2 * value - (number of terms)``, which is the stored back map.
    """
    if d != 2:
        raise ValueError("correlator conversion is only defined for d = 2")
    terms = []
    for (x, y), s in sorted(signs.items()):
        if s not in (1, -1):
            raise ValueError(f"correlator signs must be +1 or -1, got {s}")
        for a in range(2):
            b = a if s == 1 else 1 - a
            terms.append((a, b, x, y, 1.0))
    return SteeringFunctional(2, n_x, n_y, tuple(terms), back_map=(2.0, -float(len(signs))))


def mub_correlation(d, n):
    """Sum over a and x of p(a, a | x, x): the MUB steering functional."""
    return SteeringFunctional(d, n, n, tuple((a, a, x, x, 1.0) for x in range(n) for a in range(d)))


def qubit_three_setting():
    """<A1 X> + <A2 Z> + <A3 Y> in probability form (pair with ``pauli-xzy`` targets)."""
    return correlator_to_probability_form({(x, x): 1 for x in range(3)}, 3, 3)


ELEGANT_T = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


def elegant_bell():
    """Bob-trusted Elegant Bell expression sum (-1)^T[x][y] <A_x B_y> (pair with ``pauli-xyz``)."""
    signs = {(x, y): (-1) ** ELEGANT_T[x][y] for x in range(4) for y in range(3)}
    return correlator_to_probability_form(signs, 4, 3)
