"""Operator dominance for states close in fidelity to a pure state.

Every density operator sigma with <psi|sigma|psi> >= 1 - eps satisfies

    sigma <= (1 + mu) |psi><psi| + z(eps, mu) * I,    for any mu >= -1,

with z(eps, mu) = (sqrt(mu^2 + 4 eps (1 + mu)) - mu) / 2, and z is the
smallest identity weight for which this holds.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import as_ket, haar_ket, orthogonal_unit, projector


def z_coeff(epsilon, mu):
    """Identity weight of the dominance operator (vectorised over numpy inputs)."""
    eps = np.asarray(epsilon, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < -1):
        raise ValueError("mu must be >= -1")
    if np.any(eps < 0) or np.any(eps > 1):
        raise ValueError("epsilon must lie in [0, 1]")
    root = np.sqrt(mu * mu + 4 * eps * (1 + mu))
    # rationalised form avoids cancellation for large positive mu
    with np.errstate(divide="ignore", invalid="ignore"):
        stable = np.where(root + mu > 0, 2 * eps * (1 + mu) / (root + mu), 0.0)
    z = np.where(mu > 0, stable, 0.5 * (root - mu))
    return float(z) if z.ndim == 0 else z


@dataclass(frozen=True)
class DominanceCertificate:
    psi: np.ndarray
    epsilon: float
    mu: float
    N: np.ndarray

    @property
    def identity_weight(self):
        return z_coeff(self.epsilon, self.mu)


def dominance_operator(psi, epsilon, mu):
    psi = as_ket(psi, tol=1e-10)
    z = z_coeff(epsilon, mu)
    n = (1 + mu) * projector(psi) + z * np.eye(psi.size)
    return DominanceCertificate(psi, float(epsilon), float(mu), n)


def sample_close_state(psi, epsilon, seed=None, max_components=8):
    """Random density operator with fidelity at least ``1 - epsilon`` to ``psi``.

    The state mixes up to ``max_components`` pure states
    sqrt(1 - xi_i) psi + sqrt(xi_i) perp_i whose average deficit sum q_i xi_i
    is either exactly ``epsilon`` or a random fraction of it. Individual
    deficits may exceed ``epsilon``.
    """
    psi = as_ket(psi, tol=1e-10)
    rng = np.random.default_rng(seed)
    dim = psi.size
    if epsilon == 0 or dim == 1:
        return projector(psi)
    k = int(rng.integers(1, max_components + 1))
    q = rng.dirichlet(np.ones(k))
    raw = rng.random(k) ** rng.uniform(0.3, 3.0)
    target = epsilon if rng.random() < 0.5 else epsilon * rng.random()
    xi = _scale_deficits(q, raw, target)
    sigma = np.zeros((dim, dim), dtype=complex)
    for qi, x in zip(q, xi):
        perp = haar_ket(dim, rng)
        perp -= (psi.conj() @ perp) * psi
        perp /= np.linalg.norm(perp)
        phi = np.sqrt(1 - x) * psi + np.sqrt(x) * perp
        sigma += qi * projector(phi)
    return 0.5 * (sigma + sigma.conj().T)


def _scale_deficits(q, raw, target):
    """Find c with sum q_i min(1, c raw_i) == target by bisection."""
    if target <= 0 or not np.any(raw > 0):
        return np.zeros_like(raw)
    lo, hi = 0.0, 1.0
    while np.dot(q, np.minimum(1.0, hi * raw)) < target:
        hi *= 2
        if hi > 1e12:
            return np.ones_like(raw)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.dot(q, np.minimum(1.0, mid * raw)) < target:
            lo = mid
        else:
            hi = mid
    return np.minimum(1.0, lo * raw)


def x_opt(epsilon, mu):
    """Overlap <phi*|psi> of the probe that saturates the dominance bound."""
    root = np.sqrt(mu * mu + 4 * epsilon * (1 + mu))
    return float(np.sqrt(max(0.0, 0.5 * (1 - (mu + 2 * epsilon) / root))))


def saturating_witness(psi, epsilon, mu):
    """Boundary state sigma* and probe phi* with <phi*|(N - sigma*)|phi*> = 0.

    sigma* is the pure state sqrt(1-eps) psi + sqrt(eps) psi_perp; phi* lies
    in the same real plane with overlap ``x_opt`` on psi.
    """
    psi = as_ket(psi, tol=1e-10)
    if psi.size < 2:
        raise ValueError("saturating witness needs dimension >= 2")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    perp = orthogonal_unit(psi)
    sigma = projector(np.sqrt(1 - epsilon) * psi + np.sqrt(epsilon) * perp)
    x = x_opt(epsilon, mu)
    phi = x * psi + np.sqrt(1 - x * x) * perp
    return sigma, phi


def dominance_sweep(samples=1000, seed=0, max_dim=16, max_eps=0.3, mu_range=(-1.0, 5.0)):
    """Random check of the dominance bound and of its saturating witness.

    Returns ``(worst_min_eig, worst_witness_residual)`` over ``samples``
    random tuples; the first should be >= 0 and the second 0, up to
    round-off.
    """
    from .linalg import min_eig

    rng = np.random.default_rng(seed)
    worst_eig, worst_res = np.inf, 0.0
    for i in range(samples):
        dim = int(rng.integers(2, max_dim + 1))
        psi = haar_ket(dim, rng)
        eps = float(rng.uniform(0, max_eps))
        mu = float(rng.uniform(*mu_range))
        cert = dominance_operator(psi, eps, mu)
        sigma = sample_close_state(psi, eps, seed=[seed, i])
        worst_eig = min(worst_eig, min_eig(cert.N - sigma))
        if eps > 0:
            s_star, phi = saturating_witness(psi, eps, mu)
            res = abs(np.real(phi.conj() @ (cert.N - s_star) @ phi))
            worst_res = max(worst_res, res)
    return float(worst_eig), float(worst_res)
