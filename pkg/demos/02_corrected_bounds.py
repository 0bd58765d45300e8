"""
Corrected bounds for a general functional
=========================================

Start from any nonnegative steering functional and target measurements,
compute the ideal bound by enumeration, then the corrected bound for a
per-outcome imprecision profile. The seesaw gives an explicit
unsteerable strategy from below.
"""

import numpy as np

from steerbound import (ImprecisionProfile, SteeringFunctional, TargetMeasurements, beta0_exact,
                        chi, corrected_bound, seesaw_lower_bound)
from steerbound.targets import wh_mubs

# a qutrit functional rewarding a = b on three bases, with uneven weights
d = 3
terms = [(a, a, x, x, w) for x, w in enumerate((1.0, 0.7, 0.4)) for a in range(d)]
f = SteeringFunctional(d, 3, 3, terms)
t = TargetMeasurements.from_family(wh_mubs(d, 3))

beta0 = beta0_exact(f, t).value
print("ideal LHS bound:", beta0, " algebraic ceiling:", chi(f))

# the third basis is the least trustworthy
eps = np.zeros((d, 3))
eps[:, 0], eps[:, 1], eps[:, 2] = 0.002, 0.005, 0.03
prof = ImprecisionProfile(eps)

upper = corrected_bound(f, beta0, prof)
lower = seesaw_lower_bound(f, t, prof)
print("corrected bound:", upper.value, " at mu =", upper.mu_star)
print("seesaw value:   ", lower.value)
print("fidelity constraints violated by the strategy:", lower.fidelity_violations(t, eps) or "none")
