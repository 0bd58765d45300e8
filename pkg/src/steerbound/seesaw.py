"""Lower bounds from explicit unsteerable strategies.

A strategy fixes a deterministic Alice response a(x), a pure state for Bob
and one lab ray per trusted operator. Its value is a certified lower bound
on the imprecise-measurement LHS value because every ray meets its
fidelity constraint. The search alternates two exact maximisations:
Bob's state is the top eigenvector of the weighted ray projectors, and
each ray is the best unit vector within its fidelity cap of the target.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import mu_grid
from .config import ENUMERATION_CAP, TOL
from .dominance import z_coeff
from .linalg import haar_ket, projector
from .scenario import (EnumerationInfeasible, ImprecisionProfile, assignment_count,
                       beta0_exact, ideal_values, iter_assignment_blocks)


@dataclass
class LHSStrategy:
    assignment: tuple
    bob_rays: dict
    bob_state: np.ndarray
    value: float
    heuristic: bool = False
    projective: bool = False
    info: dict = field(default_factory=dict)

    def operators(self, f, t=None):
        """(alice, bob, rho) reproducing the strategy in ``scenario.evaluate`` form.

        Alice is a trivial one-dimensional system answering a(x) with certainty.
        """
        alice = [[np.eye(1) * (a == self.assignment[x]) for a in range(f.d)] for x in range(f.n_x)]
        bob = [[projector(self.bob_rays[(b, y)]) if (b, y) in self.bob_rays else None
                for b in range(f.d)] for y in range(f.n_y)]
        return alice, bob, projector(self.bob_state)

    def fidelity_violations(self, t, eps, tol=TOL.feasibility):
        """(b, y) pairs whose ray misses its fidelity constraint by more than ``tol``."""
        e = eps.eps if isinstance(eps, ImprecisionProfile) else np.asarray(eps)
        bad = []
        for (b, y), v in self.bob_rays.items():
            fid = abs(np.vdot(t.ket(b, y), v)) ** 2
            if fid < 1 - e[b, y] - tol:
                bad.append((b, y))
        return bad

    def as_record(self):
        return {
            "value": float(self.value),
            "assignment": [int(a) for a in self.assignment],
            "state": [[float(z.real), float(z.imag)] for z in self.bob_state],
            "rays": [{"b": int(b), "y": int(y), "amplitudes": [[float(z.real), float(z.imag)] for z in v]}
                     for (b, y), v in sorted(self.bob_rays.items())],
            "heuristic": self.heuristic,
            "projective": self.projective,
        }


def _ray_update(targets, state, eps):
    """Vectorised ``constrained_ray_update`` over rows of ``targets``."""
    ov = targets.conj() @ state                       # <t_k|s>
    fid = np.abs(ov) ** 2
    perp = state[None, :] - ov[:, None] * targets
    norm = np.linalg.norm(perp, axis=1)
    phase = np.exp(1j * np.angle(ov))
    safe = np.where(norm > 1e-15, norm, 1.0)
    rays = (np.sqrt(1 - eps)[:, None] * phase[:, None] * targets
            + np.sqrt(eps)[:, None] * perp / safe[:, None])
    free = fid >= 1 - eps
    rays[free] = state
    degenerate = (~free) & (norm <= 1e-15)
    rays[degenerate] = targets[degenerate]
    return rays


def constrained_ray_update(target, objective_ray, epsilon):
    """Unit vector maximising |<v|objective_ray>|^2 subject to |<v|target>|^2 >= 1 - epsilon.

    The optimum lies in the span of the two inputs: the objective itself if it
    is feasible, otherwise the ray at fidelity exactly 1 - epsilon tilted
    toward the objective with phases aligned.
    """
    t = np.asarray(target, dtype=complex)
    s = np.asarray(objective_ray, dtype=complex)
    return _ray_update(t[None, :], s, np.array([float(epsilon)]))[0]


def _qubit_complement(v):
    return np.array([-np.conj(v[1]), np.conj(v[0])])


class _Branch:
    """Seesaw problem for one Alice response, reduced to weighted rays.

    value(state, rays) = constant + sum_k weight_k |<ray_k|state>|^2.
    """

    def __init__(self, assignment, w, t, eps, projective, support):
        self.assignment = assignment
        self.keys, weights, targets, caps = [], [], [], []
        self.constant = 0.0
        self.partner = {}
        for y in range(w.shape[1]):
            if projective:
                # complete qubit measurement {v, v_perp}: only the weight difference matters
                lo, hi = sorted(range(2), key=lambda b: w[b, y])
                self.constant += w[lo, y]
                diff = w[hi, y] - w[lo, y]
                cap = min((eps[b, y] for b in range(2) if support[b, y]), default=0.0)
                if diff > 0:
                    self.keys.append((hi, y))
                    self.partner[(hi, y)] = (lo, y)
                    weights.append(diff)
                    targets.append(t.ket(hi, y))
                    caps.append(cap)
                continue
            for b in range(w.shape[0]):
                if w[b, y] > 0:
                    self.keys.append((b, y))
                    weights.append(w[b, y])
                    targets.append(t.ket(b, y))
                    caps.append(eps[b, y])
        self.weights = np.array(weights)
        self.dim = t.dim
        self.targets = np.array(targets, dtype=complex).reshape(len(weights), self.dim)
        self.caps = np.array(caps, dtype=float)

    def run(self, start, max_iters, tol, history=None):
        if not len(self.keys):
            return self.constant, start, np.zeros((0, self.dim), dtype=complex), 0
        state, value, it = start, -np.inf, 0
        for it in range(1, max_iters + 1):
            rays = _ray_update(self.targets, state, self.caps)
            m = np.einsum("k,ki,kj->ij", self.weights, rays, rays.conj())
            vals, vecs = np.linalg.eigh(m)
            new = float(vals[-1])
            if new < value - 1e-10 * max(1.0, abs(value)):
                raise RuntimeError(f"seesaw ascent violated: {value!r} -> {new!r}")
            state = vecs[:, -1]
            if history is not None:
                history.append(new)
            done = new - value < tol
            value = max(value, new)
            if done:
                break
        rays = _ray_update(self.targets, state, self.caps)
        value = float(self.weights @ (np.abs(rays.conj() @ state) ** 2))
        return self.constant + value, state, rays, it

    def upper_bound(self, ideal_top, mus):
        """Dominance bound for this branch at each trial mu (any mu is valid)."""
        if not len(self.keys):
            return self.constant
        u = 2 * z_coeff(self.caps[None, :], mus[:, None])
        return self.constant + float(np.min((1 + mus) * ideal_top + 0.5 * u @ self.weights))

    def ideal_top(self):
        if not len(self.keys):
            return 0.0
        m = np.einsum("k,ki,kj->ij", self.weights, self.targets, self.targets.conj())
        return float(np.linalg.eigvalsh(m)[-1])

    def signature(self):
        """Key equal for branches related by a unitary and ket phases (values then coincide)."""
        g = self.targets.conj() @ self.targets.T
        if len(self.keys) and np.all(np.abs(g[0]) > 1e-8):
            ph = g[0] / np.abs(g[0])
            g = g * ph.conj()[None, :] * ph[:, None]
        else:
            return ("raw", self.assignment)
        return (round(self.constant, 9), tuple(np.round(self.weights, 9)), tuple(np.round(self.caps, 12)),
                tuple(np.round(g.real, 9).ravel()), tuple(np.round(g.imag, 9).ravel()))

    def strategy(self, state, rays, value, **kw):
        bob_rays = {}
        for k, key in enumerate(self.keys):
            bob_rays[key] = rays[k]
            if key in self.partner:
                bob_rays[self.partner[key]] = _qubit_complement(rays[k])
        return LHSStrategy(tuple(int(a) for a in self.assignment), bob_rays, state, float(value), **kw)


def _check_projective(f, t):
    if f.d != 2 or t.dim != 2:
        raise ValueError("complete projective lab measurements are supported for qubits only")
    for y in range(t.n_y):
        k0, k1 = t.ket(0, y), t.ket(1, y)
        if k0 is None or k1 is None or abs(np.vdot(k0, k1)) > 1e-8:
            raise ValueError(f"targets for input y={y} must form an orthonormal qubit basis")


def seesaw_lower_bound(f, t, eps, restarts=20, max_iters=500, tol=1e-11, seed=0,
                       cap=ENUMERATION_CAP, heuristic=False, projective=False, prune=True):
    """Best explicit unsteerable strategy found by alternating maximisation.

    Alice responses are enumerated exactly. Responses whose targets, weights
    and imprecisions are unitarily equivalent to one already solved are
    skipped, as are those whose own dominance bound cannot beat the current
    best value. Set ``projective=True`` to require complete rank-one
    projective lab measurements (qubits only); by default each lab operator
    is constrained on its own.
    """
    t.check_compatible(f)
    if not isinstance(eps, ImprecisionProfile):
        eps = ImprecisionProfile(eps)
    e = eps.eps
    if projective:
        _check_projective(f, t)
    count = assignment_count(f)
    if count > cap:
        if not heuristic:
            raise EnumerationInfeasible(
                f"{count} deterministic responses exceed the cap of {cap}; enable the heuristic search")
        return _coordinate_ascent(f, t, e, restarts, max_iters, tol, seed, projective)

    # ideal values order the search so good branches prune the rest
    order = []
    for block in iter_assignment_blocks(f):
        vals, _ = ideal_values(f, t, block)
        order.extend(zip(vals, map(tuple, block)))
    order.sort(key=lambda p: -p[0])

    mus = mu_grid(30)
    best, seen, stats = None, set(), {"branches": 0, "pruned": 0, "duplicates": 0}
    for idx, (_, a) in enumerate(order):
        branch = _Branch(a, f.weights(a), t, e, projective, f.support())
        sig = branch.signature()
        if sig in seen:
            stats["duplicates"] += 1
            continue
        seen.add(sig)
        if prune and best is not None and branch.upper_bound(branch.ideal_top(), mus) <= best.value + 1e-12:
            stats["pruned"] += 1
            continue
        stats["branches"] += 1
        cand = _solve_branch(branch, restarts, max_iters, tol, np.random.default_rng([seed, idx]))
        if best is None or cand.value > best.value:
            best = cand
    best.projective = projective
    best.info = stats
    return best


def _solve_branch(branch, restarts, max_iters, tol, rng):
    starts = []
    if len(branch.keys):
        m = np.einsum("k,ki,kj->ij", branch.weights, branch.targets, branch.targets.conj())
        starts.append(np.linalg.eigh(m)[1][:, -1])
    while len(starts) < max(1, restarts):
        starts.append(haar_ket(branch.dim, rng))
    best = None
    for s in starts:
        value, state, rays, iters = branch.run(s, max_iters, tol)
        if best is None or value > best[0]:
            best = (value, state, rays, iters)
    return branch.strategy(best[1], best[2], best[0])


def _coordinate_ascent(f, t, e, restarts, max_iters, tol, seed, projective):
    """Greedy search over Alice responses when enumeration is out of reach."""
    rng = np.random.default_rng(seed)

    def solve(a, n):
        return _solve_branch(_Branch(a, f.weights(a), t, e, projective, f.support()), n, max_iters, tol, rng)

    best = None
    for _ in range(max(1, restarts)):
        a = list(rng.integers(0, f.d, size=f.n_x))
        cur = solve(tuple(a), 2)
        improved = True
        while improved:
            improved = False
            for x in range(f.n_x):
                for val in range(f.d):
                    if val == a[x]:
                        continue
                    trial = a.copy()
                    trial[x] = val
                    cand = solve(tuple(trial), 2)
                    if cand.value > cur.value + tol:
                        a, cur, improved = trial, cand, True
        if best is None or cur.value > best.value:
            best = cur
    best = max(best, solve(best.assignment, restarts), key=lambda s: s.value)
    best.heuristic = True
    best.projective = projective
    return best


def plateau_threshold(f, t, eps_scan, tol=1e-6, beta0=None, **opts):
    """Smallest scanned uniform imprecision whose seesaw value exceeds beta0 + tol.

    Returns ``math.inf`` if no scanned value shows an increase.
    """
    if beta0 is None:
        beta0 = beta0_exact(f, t).value
    for epsilon in eps_scan:
        if epsilon <= 0:
            continue
        s = seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, epsilon), **opts)
        if s.value > beta0 + tol:
            return float(epsilon)
    return math.inf
