"""Imprecision-corrected upper bounds on steering functionals.

For imprecision parameters eps[b, y] and any mu >= -1,

    g(mu) = (1 + mu) beta0 + 1/2 sum_x max_a sum_{b,y} c[a,b,x,y] u[b,y](mu),
    u[b,y](mu) = sqrt(mu^2 + 4 eps[b,y] (1 + mu)) - mu,

is an upper bound on the functional when Bob's measurements are only known
up to those imprecisions; ``corrected_bound`` returns its minimum.
"""

import math

import numpy as np

from .dominance import z_coeff
from .scenario import BoundResult, ImprecisionProfile, chi

INV_PHI = (math.sqrt(5) - 1) / 2


class MuObjective:
    """Fast evaluation of g(mu) for one functional, beta0 and imprecision profile."""

    def __init__(self, f, beta0, eps):
        if not beta0 > 0:
            raise ValueError("beta0 must be positive")
        if not isinstance(eps, ImprecisionProfile):
            eps = ImprecisionProfile(eps)
        if eps.eps.shape != (f.d, f.n_y):
            raise ValueError(f"imprecision profile must have shape {(f.d, f.n_y)}")
        self.beta0 = float(beta0)
        c = f.dense()
        # tables[x, a, k] with k running over the supported (b, y) pairs
        mask = f.support()
        self.eps = eps.eps[mask]
        self.tables = np.stack([c[:, :, x, :][:, mask] for x in range(f.n_x)])
        self.chi = chi(f)

    def u(self, mu):
        mu = np.atleast_1d(np.asarray(mu, dtype=float))
        return 2 * z_coeff(self.eps[None, :], mu[:, None])

    def __call__(self, mu):
        mu_arr = np.atleast_1d(np.asarray(mu, dtype=float))
        u = self.u(mu_arr)  # [m, k]
        corr = np.einsum("xak,mk->mxa", self.tables, u).max(axis=2).sum(axis=1)
        g = (1 + mu_arr) * self.beta0 + 0.5 * corr
        return float(g[0]) if np.ndim(mu) == 0 else g


def mu_grid(n=60):
    """Log-spaced trial points covering [-1, 1e6], dense on both sides of 0."""
    pos = np.geomspace(1e-14, 1e6, n)
    near_minus_one = -1 + np.geomspace(1e-14, 1.0, n)[:-1]
    return np.unique(np.concatenate([[-1.0, 0.0], -pos[pos < 1], pos, near_minus_one]))


def golden_section(fun, lo, hi, tol=1e-12, max_iter=500):
    """Minimise a unimodal scalar function on [lo, hi]; returns (x, f(x))."""
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(max_iter):
        if hi - lo <= tol * (1 + abs(lo) + abs(hi)):
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = fun(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def minimize_mu(g, starts=3):
    """Bracket the minimum of g over mu >= -1 on a grid and refine.

    Golden-section search runs in the bracket around each of the ``starts``
    best grid points, so no convexity assumption is needed beyond
    unimodality inside a grid cell.
    """
    grid = mu_grid()
    vals = g(grid)
    best_mu, best_val = float(grid[np.argmin(vals)]), float(vals.min())
    for i in np.argsort(vals)[:starts]:
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, len(grid) - 1)]
        m, v = golden_section(g, lo, hi)
        if v < best_val:
            best_mu, best_val = float(m), float(v)
    return best_mu, best_val


def corrected_bound(f, beta0, eps):
    """Minimum over mu >= -1 of g(mu) (the imprecision-corrected bound)."""
    g = MuObjective(f, beta0, eps)
    mu, val = minimize_mu(g)
    return BoundResult(val, "dominance-minimized", mu_star=mu,
                       validity={"chi_capped": bool(np.isclose(val, g.chi, rtol=0, atol=1e-12))},
                       extra={"chi": g.chi, "beta0": g.beta0})


def equal_eps_objective(beta0, chi_, epsilon):
    """g(mu) when every imprecision equals ``epsilon``."""
    def g(mu):
        return (1 + np.asarray(mu, dtype=float)) * beta0 + chi_ * z_coeff(epsilon, mu)
    return g


def equal_eps_derivative(beta0, chi_, epsilon, mu):
    root = math.sqrt(mu * mu + 4 * epsilon * (1 + mu))
    return beta0 + 0.5 * chi_ * ((mu + 2 * epsilon) / root - 1)


def stationary_points(beta0, chi_, epsilon):
    """The two candidate minimisers (mu_plus, mu_minus) for equal imprecisions.

    Both solve the squared stationarity condition; only the one selected by
    ``optimal_mu`` satisfies the unsquared one.
    """
    p = beta0 * (chi_ - beta0)
    if p <= 0:
        raise ValueError("stationary points need 0 < beta0 < chi")
    r = abs(chi_ - 2 * beta0) * math.sqrt(epsilon * (1 - epsilon) * p)
    base = -2 * beta0 * epsilon * (chi_ - beta0)
    return (base + r) / p, (base - r) / p


def squared_stationarity(beta0, chi_, epsilon, mu):
    """Residual of the stationarity condition after squaring away the root."""
    return ((chi_ * (mu + 2 * epsilon)) ** 2
            - (chi_ - 2 * beta0) ** 2 * (mu * mu + 4 * epsilon * (1 + mu)))


def optimal_mu(beta0, chi_, epsilon):
    mu_plus, mu_minus = stationary_points(beta0, chi_, epsilon)
    return mu_minus if 2 * beta0 >= chi_ else mu_plus


def closed_form_range(beta0, chi_):
    """Largest equal imprecision for which the closed form applies."""
    return 1 - beta0 / chi_


def corrected_bound_equal_eps(beta0, chi_, epsilon):
    """Closed-form corrected bound for equal imprecisions.

    Beyond ``closed_form_range`` the minimiser sits at mu = -1 and the bound
    is the algebraic ceiling ``chi``; that case is flagged as out of range.
    """
    if not beta0 > 0:
        raise ValueError("beta0 must be positive")
    if chi_ < beta0:
        raise ValueError("chi must be at least beta0")
    if not 0 <= epsilon <= 1:
        raise ValueError("epsilon must lie in [0, 1]")
    in_range = epsilon <= closed_form_range(beta0, chi_) + 1e-15
    if not in_range:
        return BoundResult(chi_, "closed-form-equal-eps", mu_star=-1.0,
                           validity={"closed_form_range": False})
    value = (beta0 - epsilon * (2 * beta0 - chi_)
             + 2 * math.sqrt(epsilon * (1 - epsilon) * beta0 * (chi_ - beta0)))
    mu = 0.0 if beta0 == chi_ else max(-1.0, optimal_mu(beta0, chi_, epsilon))
    return BoundResult(min(value, chi_), "closed-form-equal-eps", mu_star=mu,
                       validity={"closed_form_range": True})


def first_order(beta0, chi_, epsilon):
    """Small-imprecision approximation beta0 + 2 sqrt(beta0 (chi - beta0) eps); not a bound."""
    return beta0 + 2 * math.sqrt(beta0 * (chi_ - beta0)) * math.sqrt(epsilon)


def mub_pair_range(d):
    return 0.5 * (1 - 1 / math.sqrt(d))


def _check_mub_pair_args(d, epsilon):
    if d < 2:
        raise ValueError("d must be at least 2")
    if not 0 <= epsilon <= mub_pair_range(d) + 1e-15:
        raise ValueError(f"explicit model only valid for 0 <= eps <= {mub_pair_range(d):.6g} at d={d}")


def mub_pair_model_value(d, epsilon):
    """Value of the product-state strategy with one tilted ray per basis."""
    _check_mub_pair_args(d, epsilon)
    beta0 = 1 + 1 / math.sqrt(d)
    return beta0 + 2 / math.sqrt(d) * (math.sqrt(epsilon * (1 - epsilon) * (d - 1)) - epsilon)


def mub_pair_model_strategy(d, epsilon):
    """The explicit unsteerable strategy behind ``mub_pair_model_value``.

    Alice always answers 0; Bob holds
    nu|0> + sqrt((1-nu^2)/(d-1)) sum_{j>0} |j> with nu^2 = (1 + 1/sqrt d)/2 and
    measures the ray sqrt(1-eps)|0> + sqrt(eps/(d-1)) sum_{j>0}|j> and its
    Fourier image as the outcome-0 operators.
    """
    from .seesaw import LHSStrategy
    from .targets import fourier_matrix

    _check_mub_pair_args(d, epsilon)
    nu = math.sqrt((1 + 1 / math.sqrt(d)) / 2)
    state = np.full(d, math.sqrt((1 - nu * nu) / (d - 1)), dtype=complex)
    state[0] = nu
    ray = np.full(d, math.sqrt(epsilon / (d - 1)), dtype=complex)
    ray[0] = math.sqrt(1 - epsilon)
    rays = {(0, 0): ray, (0, 1): fourier_matrix(d) @ ray}
    value = sum(abs(np.vdot(v, state)) ** 2 for v in rays.values())
    return LHSStrategy(assignment=(0, 0), bob_rays=rays, bob_state=state, value=float(value))


def erased_share(d, epsilon):
    """Fraction of the ideal quantum-violation gap (2 - beta0) taken up by imprecision."""
    beta0 = 1 + 1 / math.sqrt(d)
    return (mub_pair_model_value(d, epsilon) - beta0) / (2 - beta0)
