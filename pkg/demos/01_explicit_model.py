"""
Two unbiased bases: the explicit model
======================================

For the correlation functional over a pair of mutually unbiased bases the
ideal LHS bound is 1 + 1/sqrt(d). A small fidelity deficit in Bob's
measurements lets a hidden-state model beat it, and the corrected bound
tells us by how much.
"""

import math

import numpy as np

from steerbound import bounds

# the share of the quantum-vs-classical gap that imprecision eats up
for d, eps in [(2, 0.005), (100, 0.02), (10**6, 0.005)]:
    print(f"d={d:>7}  eps={eps:<6}  bound={bounds.mub_pair_model_value(d, eps):.4f}"
          f"  erased share={bounds.erased_share(d, eps):.1%}")

# the explicit strategy attains the bound, so nothing tighter is possible
d, eps = 5, 0.01
strategy = bounds.mub_pair_model_strategy(d, eps)
print("\nexplicit strategy value:", strategy.value)
print("closed form:            ", bounds.mub_pair_model_value(d, eps))

# a first-order expansion is fine for tiny eps but drifts quickly
for eps in np.geomspace(1e-5, 1e-1, 5):
    beta0 = 1 + 1 / math.sqrt(d)
    print(f"eps={eps:.0e}  exact={bounds.mub_pair_model_value(d, eps):.6f}"
          f"  first order={bounds.first_order(beta0, 2.0, eps):.6f}")
