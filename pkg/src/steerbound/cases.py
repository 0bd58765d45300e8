"""Scripted reproductions of the standard case studies.

Each study returns rows ``(label, reference, computed, tolerance, passed)``;
``reference`` is ``None`` when the row checks an internal agreement
(``computed`` is then the discrepancy).
"""

import math

import numpy as np

from .bounds import (corrected_bound, corrected_bound_equal_eps, erased_share, mub_pair_model_value,
                     mub_pair_range)
from .io import GridSpec, default_axis, named_functional
from .scenario import (ImprecisionProfile, TargetMeasurements, beta0_exact, chi, elegant_bell,
                       mub_correlation, qubit_three_setting)
from .seesaw import plateau_threshold, seesaw_lower_bound
from .targets import family_by_label, mub_pair, pauli_bases, wh_mubs

# exact LHS bounds for three Weyl-Heisenberg MUBs (computational, Fourier, m=1 quadratic phase)
THREE_MUB_BETA0 = {3: 2.1371580426032586, 7: 1.7538152153687716, 11: 1.6023396689837652}


def row(label, reference, computed, tol):
    diff = computed if reference is None else computed - reference
    return (label, reference, float(computed), tol, bool(abs(diff) <= tol))


def steer_formula(epsilon):
    return math.sqrt(3) + 2 * math.sqrt(6) * math.sqrt(epsilon * (1 - epsilon)) - 2 * math.sqrt(3) * epsilon


def bell_formula(epsilon):
    return 2 * math.sqrt(3) + 4 * math.sqrt(6) * math.sqrt(epsilon * (1 - epsilon)) - 4 * math.sqrt(3) * epsilon


def two_basis_profile(f, eps1, eps2):
    e = np.zeros((f.d, f.n_y))
    e[:, 0], e[:, 1] = eps1, eps2
    return ImprecisionProfile(e)


def mub_pair_exactness(dims=range(2, 21), n_eps=10, seed=0, restarts=20):
    rows = []
    for d in dims:
        f = mub_correlation(d, 2)
        t = TargetMeasurements.from_family(mub_pair(d))
        beta0 = 1 + 1 / math.sqrt(d)
        worst_model, worst_seesaw = 0.0, 0.0
        for eps in np.linspace(0, mub_pair_range(d), n_eps):
            prof = ImprecisionProfile.uniform(f, eps)
            upper = corrected_bound(f, beta0, prof).value
            lower = seesaw_lower_bound(f, t, prof, restarts=restarts, seed=seed).value
            worst_model = max(worst_model, abs(upper - mub_pair_model_value(d, eps)))
            worst_seesaw = max(worst_seesaw, abs(lower - upper))
        rows.append(row(f"d={d} |bound - explicit model|", None, worst_model, 1e-10))
        rows.append(row(f"d={d} |seesaw - bound|", None, worst_seesaw, 1e-7))
    rows.append(row("d=2 eps=0.005 explicit model", 1.80, mub_pair_model_value(2, 0.005), 5e-4))
    rows.append(row("d=2 eps=0.005 erased share", 0.31, erased_share(2, 0.005), 0.01))
    rows.append(row("d=100 eps=0.02 erased share", 0.30, erased_share(100, 0.02), 0.01))
    rows.append(row("d=1e6 eps=0.005 erased share", 0.141, erased_share(10**6, 0.005), 0.005))
    return rows


def three_mubs(dims=(3, 7, 11), eps_values=(0.001, 0.01, 0.05), seed=0, restarts=20):
    rows = []
    for d in dims:
        f = mub_correlation(d, 3)
        t = TargetMeasurements.from_family(wh_mubs(d, 3))
        beta0 = beta0_exact(f, t).value
        if d in THREE_MUB_BETA0:
            rows.append(row(f"d={d} beta0 (enumeration)", THREE_MUB_BETA0[d], beta0, 1e-10))
        for eps in eps_values:
            prof = ImprecisionProfile.uniform(f, eps)
            upper = corrected_bound(f, beta0, prof).value
            lower = seesaw_lower_bound(f, t, prof, restarts=restarts, seed=seed).value
            rows.append(row(f"d={d} eps={eps} |seesaw - bound|", None, abs(lower - upper), 1e-5))
    return rows


def grid_rows(grid, seed=0, restarts=20, beta0=None):
    """(eps1, eps2, upper, lower, gap) for every point of a two-basis grid."""
    f = named_functional(grid.functional, grid.d)
    fam = family_by_label(grid.targets, grid.d, f.n_y)
    t = TargetMeasurements(tuple(tuple(b) for b in fam.bases[:f.n_y]))
    if beta0 is None:
        beta0 = beta0_exact(f, t).value
    out = []
    for e1 in grid.axis1:
        for e2 in grid.axis2:
            prof = two_basis_profile(f, e1, e2)
            upper = corrected_bound(f, beta0, prof).value
            lower = seesaw_lower_bound(f, t, prof, restarts=restarts, seed=seed).value
            out.append((e1, e2, upper, lower, upper - lower))
    return out


def grid_study(dims=(3, 7, 11), size=28, seed=0, restarts=20):
    rows = []
    axis = default_axis(size)
    for d in dims:
        data = grid_rows(GridSpec(d, "mub-correlation:2", axis, axis), seed=seed, restarts=restarts)
        diag = max(abs(g) for e1, e2, _, _, g in data if e1 == e2)
        rows.append(row(f"d={d} {size}x{size} max diagonal gap", None, diag, 1e-5))
        rows.append(row(f"d={d} min gap (soundness)", None, min(0.0, min(g for *_, g in data)), 1e-7))
        if d == 7:
            (*_, gap), = grid_rows(GridSpec(7, "mub-correlation:2", [0.01], [0.09]), seed=seed, restarts=restarts)
            rows.append(row("d=7 gap at (0.01, 0.09)", 0.01, gap, 0.005))
    return rows


def qubit_steer_vs_bell(seed=0, restarts=20):
    rows = []
    f = qubit_three_setting()
    t = TargetMeasurements.from_family(pauli_bases("xzy"))
    beta0 = beta0_exact(f, t).value
    rows.append(row("three-setting LHS bound (correlator)", math.sqrt(3), f.to_correlator(beta0), 1e-10))
    for eps in (0.0, 0.001, 0.01, 0.05, 0.1, 0.2):
        upper = corrected_bound(f, beta0, ImprecisionProfile.uniform(f, eps)).value
        rows.append(row(f"three-setting bound eps={eps}", steer_formula(eps), f.to_correlator(upper), 1e-10))
    eb = elegant_bell()
    tb = TargetMeasurements.from_family(pauli_bases("xyz"))
    b0 = beta0_exact(eb, tb).value
    rows.append(row("elegant-bell LHS bound (correlator)", 4.0, eb.to_correlator(b0), 1e-10))
    closed = corrected_bound_equal_eps(b0, chi(eb), 0.01).value
    rows.append(row("elegant-bell corrected bound eps=0.01 is looser than seesaw", None,
                    max(0.0, bell_formula(0.01) - eb.to_correlator(closed)), 1e-12))
    for eps in (0.001, 0.002, 0.003):
        s = seesaw_lower_bound(eb, tb, ImprecisionProfile.uniform(eb, eps), projective=True,
                               restarts=restarts, seed=seed)
        rows.append(row(f"elegant-bell plateau eps={eps}", 4.0, eb.to_correlator(s.value), 1e-6))
    for eps in (0.005, 0.01, 0.05, 0.1):
        s = seesaw_lower_bound(eb, tb, ImprecisionProfile.uniform(eb, eps), projective=True,
                               restarts=restarts, seed=seed)
        rows.append(row(f"elegant-bell seesaw eps={eps}", bell_formula(eps), eb.to_correlator(s.value), 1e-4))
    rows.append(row("elegant-bell formula at eps=0.00326", 4.0, bell_formula(0.00326), 1e-3))
    thr = plateau_threshold(eb, tb, [0.001, 0.002, 0.003, 0.0035, 0.004], beta0=b0,
                            projective=True, restarts=restarts, seed=seed)
    rows.append(row("elegant-bell plateau threshold in (0.003, 0.0035]", 0.0035, thr, 0.0))
    thr_steer = plateau_threshold(f, t, [0.001, 0.002], beta0=beta0, projective=True,
                                  restarts=restarts, seed=seed)
    rows.append(row("three-setting has no plateau", 0.001, thr_steer, 0.0))
    return rows


CASES = {
    "mub-pair-exactness": mub_pair_exactness,
    "three-mubs": three_mubs,
    "grid-d3-7-11": grid_study,
    "qubit-steer-vs-bell": qubit_steer_vs_bell,
}
