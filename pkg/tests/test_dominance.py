import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steerbound.dominance import (dominance_operator, dominance_sweep, sample_close_state,
                                  saturating_witness, x_opt, z_coeff)
from steerbound.linalg import fidelity_pure, min_eig, projector

from conftest import random_ket


def z_direct(eps, mu):
    return 0.5 * (np.sqrt(mu**2 + 4 * eps * (1 + mu)) - mu)


def test_z_examples():
    assert z_coeff(0.0, 1.0) == 0.0
    assert z_coeff(0.37, 0.0) == pytest.approx(np.sqrt(0.37))
    # at mu = -1 the eps term vanishes: z = (sqrt(1) + 1) / 2
    assert z_coeff(0.01, -1.0) == pytest.approx(1.0)


def test_z_domain():
    with pytest.raises(ValueError):
        z_coeff(0.1, -1.5)


def test_z_large_mu_limit():
    assert z_coeff(0.05, 1e6) == pytest.approx(0.05, abs=1e-5)
    assert z_coeff(0.05, 1e12) == pytest.approx(0.05, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(eps=st.floats(0, 1), mu=st.floats(-1, 50), step=st.floats(0, 10))
def test_z_nonnegative_and_nonincreasing(eps, mu, step):
    z1, z2 = z_coeff(eps, mu), z_coeff(eps, mu + step)
    assert z1 >= 0 and z2 <= z1 + 1e-12
    assert z1 == pytest.approx(z_direct(eps, mu), abs=1e-12)


def test_dominance_operator_mu_minus_one_is_identity(rng):
    psi = random_ket(rng, 4)
    assert np.allclose(dominance_operator(psi, 0.2, -1.0).N, np.eye(4))


def test_dominance_operator_eps_zero(rng):
    psi = random_ket(rng, 3)
    assert np.allclose(dominance_operator(psi, 0.0, 0.0).N, projector(psi))


def test_dominance_random_example(rng):
    psi = random_ket(rng, 5)
    cert = dominance_operator(psi, 0.05, 0.3)
    for seed in range(20):
        assert min_eig(cert.N - sample_close_state(psi, 0.05, seed=seed)) >= -1e-9


def test_sample_eps_zero(rng):
    psi = random_ket(rng, 3)
    assert np.allclose(sample_close_state(psi, 0.0, seed=1), projector(psi))


@pytest.mark.parametrize("seed", range(30))
def test_sample_contract(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 10))
    psi = random_ket(rng, d)
    eps = float(rng.uniform(0, 0.5))
    sigma = sample_close_state(psi, eps, seed=seed)
    assert abs(np.trace(sigma) - 1) <= 1e-10
    assert min_eig(sigma) >= -1e-10
    assert fidelity_pure(sigma, psi) >= 1 - eps - 1e-10


def test_sample_deterministic(rng):
    psi = random_ket(rng, 6)
    assert np.array_equal(sample_close_state(psi, 0.1, seed=42), sample_close_state(psi, 0.1, seed=42))


def test_sample_hits_both_regimes(rng):
    psi = random_ket(rng, 4)
    fids = [fidelity_pure(sample_close_state(psi, 0.2, seed=s), psi) for s in range(40)]
    assert any(abs(f - 0.8) < 1e-9 for f in fids) and any(f > 0.8 + 1e-6 for f in fids)


def test_jensen_regime_components_beyond_eps():
    # components individually further than eps from psi, average deficit still eps
    psi = np.array([1, 0, 0], dtype=complex)
    eps, mu = 0.1, 0.7
    perp = [np.array([0, 1, 0]), np.array([0, 0, 1])]
    xis, q = [0.05, 0.3], [0.8, 0.2]   # 0.8*0.05 + 0.2*0.3 = 0.1
    sigma = sum(qi * projector(np.sqrt(1 - x) * psi + np.sqrt(x) * p) for qi, x, p in zip(q, xis, perp))
    assert min_eig(dominance_operator(psi, eps, mu).N - sigma) >= -1e-12


@pytest.mark.parametrize("d,eps,mu", [(2, 0.01, 0.5), (7, 0.05, 1.0), (3, 0.2, -0.9), (5, 0.3, 5.0), (4, 0.1, -1.0)])
def test_saturating_witness(rng, d, eps, mu):
    psi = random_ket(rng, d) if d > 2 else np.array([1, 0], dtype=complex)
    cert = dominance_operator(psi, eps, mu)
    sigma, phi = saturating_witness(psi, eps, mu)
    assert fidelity_pure(sigma, psi) == pytest.approx(1 - eps, abs=1e-12)
    assert abs(np.real(phi.conj() @ (cert.N - sigma) @ phi)) <= 1e-9
    # shaving the identity weight breaks dominance: eta_opt is the smallest valid weight
    assert min_eig(cert.N - 10 * 1e-9 * np.eye(d) - sigma) < 0


def test_x_opt_small_eps_limit():
    assert x_opt(1e-14, 1.0) == pytest.approx(0, abs=1e-6)


def test_x_opt_minimises_probe_residual():
    # brute-force scan of x over [0, 1] agrees with the closed-form optimiser
    eps, mu = 0.07, 0.4
    eta = z_coeff(eps, mu)
    xs = np.linspace(0, 1, 200001)
    r = eta - eps + xs**2 * (mu + 2 * eps) - 2 * xs * np.sqrt(1 - xs**2) * np.sqrt(eps * (1 - eps))
    assert xs[np.argmin(r)] == pytest.approx(x_opt(eps, mu), abs=1e-5)
    assert r.min() == pytest.approx(0, abs=1e-9)


def test_saturating_witness_needs_dimension_two():
    with pytest.raises(ValueError):
        saturating_witness(np.array([1.0]), 0.1, 0.0)


def test_sweep_small():
    worst, res = dominance_sweep(100, seed=3)
    assert worst >= -1e-9 and res <= 1e-9
