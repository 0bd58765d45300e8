import math

import numpy as np
import pytest

from steerbound.bounds import corrected_bound, mub_pair_model_strategy
from steerbound.linalg import projector
from steerbound.scenario import (EnumerationInfeasible, ImprecisionProfile, SteeringFunctional,
                                 TargetMeasurements, beta0_exact, elegant_bell, evaluate, mub_correlation,
                                 qubit_three_setting)
from steerbound.seesaw import _Branch, constrained_ray_update, plateau_threshold, seesaw_lower_bound
from steerbound.targets import mub_pair, pauli_bases, wh_mubs

from conftest import random_ket


def targets(fam):
    return TargetMeasurements.from_family(fam)


def test_ray_update_target_is_objective(rng):
    t = random_ket(rng, 4)
    assert np.allclose(constrained_ray_update(t, t, 0.3), t)


def test_ray_update_orthogonal_case():
    v = constrained_ray_update([1, 0], [0, 1], 0.25)
    assert np.allclose(v, [np.sqrt(3) / 2, 0.5])
    assert abs(v[1]) ** 2 == pytest.approx(0.25)


def test_ray_update_feasible_objective_returned(rng):
    t = np.array([1, 0, 0], dtype=complex)
    s = np.array([np.sqrt(0.95), np.sqrt(0.05), 0])
    assert np.allclose(constrained_ray_update(t, s, 0.1), s)


def test_ray_update_phase_parallel():
    t = np.array([1, 0], dtype=complex)
    v = constrained_ray_update(t, 1j * t, 0.2)
    assert abs(np.vdot(t, v)) == pytest.approx(1)


def test_ray_update_reproduces_tilted_ray():
    d, eps = 3, 0.04
    nu = math.sqrt((1 + 1 / math.sqrt(d)) / 2)
    psi_b = np.array([nu] + [math.sqrt((1 - nu**2) / (d - 1))] * (d - 1))
    v = constrained_ray_update(np.eye(d)[0], psi_b, eps)
    expected = np.array([math.sqrt(1 - eps)] + [math.sqrt(eps / 2)] * 2)
    assert np.allclose(v, expected, atol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_ray_update_beats_random_feasible_rays(seed):
    # sampling oracle: no feasible unit vector found at random does better
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 6))
    t, s = random_ket(rng, d), random_ket(rng, d)
    eps = float(rng.uniform(0.001, 0.3))
    v = constrained_ray_update(t, s, eps)
    best = abs(np.vdot(v, s)) ** 2
    assert abs(np.vdot(t, v)) ** 2 >= 1 - eps - 1e-12
    for _ in range(2000):
        w = t + rng.uniform(0, 1) * random_ket(rng, d)
        w /= np.linalg.norm(w)
        if abs(np.vdot(t, w)) ** 2 >= 1 - eps:
            assert abs(np.vdot(w, s)) ** 2 <= best + 1e-12


@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_seesaw_eps_zero_gives_beta0(d, n):
    f, t = mub_correlation(d, n), targets(wh_mubs(d, n))
    s = seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, 0.0), restarts=3)
    assert s.value == pytest.approx(beta0_exact(f, t).value, abs=1e-9)


def test_seesaw_two_mubs_d3():
    f, t = mub_correlation(3, 2), targets(mub_pair(3))
    eps = ImprecisionProfile.uniform(f, 0.01)
    s = seesaw_lower_bound(f, t, eps)
    assert s.value == pytest.approx(1.72828, abs=1e-5)
    assert s.value == pytest.approx(corrected_bound(f, 1 + 1 / math.sqrt(3), eps).value, abs=1e-7)


def test_seesaw_elegant_bell_projective():
    f, t = elegant_bell(), targets(pauli_bases("xyz"))
    s = seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, 0.01), projective=True)
    eps = 0.01
    expected = 2 * math.sqrt(3) + 4 * math.sqrt(6) * math.sqrt(eps * (1 - eps)) - 4 * math.sqrt(3) * eps
    assert f.to_correlator(s.value) == pytest.approx(expected, abs=1e-4)
    assert f.to_correlator(s.value) == pytest.approx(4.3697, abs=1e-4)
    # complete measurements: the partner ray is the orthogonal complement
    for y in range(3):
        assert abs(np.vdot(s.bob_rays[(0, y)], s.bob_rays[(1, y)])) < 1e-12


def test_elegant_bell_independent_operators_exceed_projective():
    # without completeness the ideal-bound branch gains 16 sqrt(eps(1-eps)) at once
    f, t = elegant_bell(), targets(pauli_bases("xyz"))
    eps = 0.001
    s = seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, eps))
    assert f.to_correlator(s.value) >= 4 + 16 * math.sqrt(eps * (1 - eps)) - 1e-9


def test_projective_needs_qubits():
    f, t = mub_correlation(3, 2), targets(mub_pair(3))
    with pytest.raises(ValueError, match="qubit"):
        seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, 0.01), projective=True)


@pytest.mark.parametrize("d,eps", [(3, 0.02), (5, 0.1)])
def test_explicit_model_is_seesaw_fixed_point(d, eps):
    f, t = mub_correlation(d, 2), targets(mub_pair(d))
    model = mub_pair_model_strategy(d, eps)
    branch = _Branch((0, 0), f.weights((0, 0)), t, ImprecisionProfile.uniform(f, eps).eps, False, f.support())
    value, state, _, _ = branch.run(model.bob_state, 1, 0.0)
    assert value == pytest.approx(model.value, abs=1e-12)
    assert abs(abs(np.vdot(state, model.bob_state)) - 1) < 1e-10


def random_instance(rng, d=None):
    d = d or int(rng.integers(2, 5))
    nx, ny = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    terms = tuple((a, b, x, y, float(rng.random())) for a in range(d) for b in range(d)
                  for x in range(nx) for y in range(ny) if rng.random() < 0.3) or ((0, 0, 0, 0, 1.0),)
    f = SteeringFunctional(d, nx, ny, terms)
    t = TargetMeasurements(tuple(tuple(random_ket(rng, d) for _ in range(d)) for _ in range(ny)))
    eps = ImprecisionProfile(rng.uniform(0, 0.1, size=(d, ny)))
    return f, t, eps


@pytest.mark.parametrize("seed", range(8))
def test_monotone_ascent(seed):
    rng = np.random.default_rng(seed)
    f, t, eps = random_instance(rng)
    a = tuple(int(v) for v in rng.integers(0, f.d, size=f.n_x))
    branch = _Branch(a, f.weights(a), t, eps.eps, False, f.support())
    if not branch.keys:
        return
    hist = []
    branch.run(random_ket(rng, t.dim), 300, 0.0, history=hist)
    assert all(b >= a - 1e-12 for a, b in zip(hist, hist[1:]))


@pytest.mark.parametrize("seed", range(8))
def test_feasible_and_reevaluates(seed):
    rng = np.random.default_rng(100 + seed)
    f, t, eps = random_instance(rng)
    s = seesaw_lower_bound(f, t, eps, restarts=4, seed=seed)
    assert s.fidelity_violations(t, eps) == []
    alice, bob, rho = s.operators(f)
    assert evaluate(f, alice, bob, rho) == pytest.approx(s.value, abs=1e-10)


def test_projective_strategy_reevaluates():
    f, t = qubit_three_setting(), targets(pauli_bases("xzy"))
    eps = ImprecisionProfile.uniform(f, 0.05)
    s = seesaw_lower_bound(f, t, eps, projective=True, restarts=4)
    alice, bob, rho = s.operators(f)
    assert evaluate(f, alice, bob, rho) == pytest.approx(s.value, abs=1e-10)
    assert s.fidelity_violations(t, eps) == []


def test_deterministic(rng):
    f, t, eps = random_instance(rng, d=3)
    a = seesaw_lower_bound(f, t, eps, restarts=5, seed=7)
    b = seesaw_lower_bound(f, t, eps, restarts=5, seed=7)
    assert a.value == b.value and np.array_equal(a.bob_state, b.bob_state)


def test_random_mixed_strategies_do_not_beat_seesaw(rng):
    f, t = mub_correlation(3, 2), targets(mub_pair(3))
    eps = ImprecisionProfile.uniform(f, 0.05)
    best = seesaw_lower_bound(f, t, eps).value
    for _ in range(200):
        # fixed feasible lab rays, mixture of deterministic responses and states
        rays = {(b, y): constrained_ray_update(t.ket(b, y), random_ket(rng, 3), 0.05)
                for b in range(3) for y in range(2)}
        p = rng.dirichlet(np.ones(4))
        value = 0.0
        for w in p:
            a, s = rng.integers(0, 3, size=2), random_ket(rng, 3)
            value += w * sum(abs(np.vdot(rays[(a[x], x)], s)) ** 2 for x in range(2))
        assert value <= best + 1e-12


def test_cap_and_heuristic():
    f, t = mub_correlation(3, 3), targets(wh_mubs(3, 3))
    eps = ImprecisionProfile.uniform(f, 0.01)
    with pytest.raises(EnumerationInfeasible):
        seesaw_lower_bound(f, t, eps, cap=5)
    exact = seesaw_lower_bound(f, t, eps)
    heur = seesaw_lower_bound(f, t, eps, cap=5, heuristic=True, restarts=5)
    assert heur.heuristic and not exact.heuristic
    assert heur.value <= exact.value + 1e-10
    assert heur.value == pytest.approx(exact.value, abs=1e-6)


def test_pruning_does_not_change_value(rng):
    f, t = mub_correlation(5, 3), targets(wh_mubs(5, 3))
    eps = ImprecisionProfile(rng.uniform(0, 0.05, size=(5, 3)))
    a = seesaw_lower_bound(f, t, eps, restarts=5)
    b = seesaw_lower_bound(f, t, eps, restarts=5, prune=False)
    assert a.value == pytest.approx(b.value, abs=1e-9)


def test_plateau_threshold_examples():
    eb, tb = elegant_bell(), targets(pauli_bases("xyz"))
    thr = plateau_threshold(eb, tb, [0.001, 0.002, 0.003, 0.0035, 0.004], projective=True)
    assert 0.003 < thr <= 0.0035
    f, t = qubit_three_setting(), targets(pauli_bases("xzy"))
    assert plateau_threshold(f, t, [0.0005, 0.001]) == 0.0005
    assert plateau_threshold(f, t, [0.0, 0.0]) == math.inf


def test_strategy_record(rng):
    f, t, eps = random_instance(rng, d=2)
    rec = seesaw_lower_bound(f, t, eps, restarts=2).as_record()
    assert set(rec) >= {"value", "assignment", "state", "rays"}


def test_equivalent_branches_share_one_signature():
    # every response of the two-basis functional is a pair of kets with overlap 1/sqrt(d)
    d = 6
    f, t = mub_correlation(d, 2), TargetMeasurements.from_family(mub_pair(d))
    r = seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, 0.02), restarts=2)
    assert r.info["branches"] == 1 and r.info["duplicates"] == d * d - 1


@pytest.mark.parametrize("eps", [0.23, 0.25])
def test_three_setting_reaches_ceiling_past_closed_form_range(eps):
    # an explicit strategy beats sqrt3 + 2 sqrt6 sqrt(eps(1-eps)) - 2 sqrt3 eps here,
    # so that expression stops being a bound once eps > (1 - 1/sqrt3)/2
    f, t = qubit_three_setting(), targets(pauli_bases("xzy"))
    value = f.to_correlator(seesaw_lower_bound(f, t, ImprecisionProfile.uniform(f, eps), restarts=5).value)
    formula = math.sqrt(3) + 2 * math.sqrt(6) * math.sqrt(eps * (1 - eps)) - 2 * math.sqrt(3) * eps
    assert value == pytest.approx(3.0, abs=1e-9)
    assert value > formula + 1e-3
