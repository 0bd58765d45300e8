"""
Three unbiased bases
====================

No explicit model is known here, yet the seesaw meets the corrected bound
to numerical precision, so the bound is tight in practice.
"""

from steerbound import ImprecisionProfile, TargetMeasurements, beta0_exact, corrected_bound, seesaw_lower_bound
from steerbound.scenario import mub_correlation
from steerbound.targets import wh_mubs

for d in (3, 7, 11):
    f = mub_correlation(d, 3)
    t = TargetMeasurements.from_family(wh_mubs(d, 3))
    beta0 = beta0_exact(f, t).value
    print(f"d={d}: beta0 = {beta0:.10f}")
    for eps in (0.001, 0.01, 0.05):
        prof = ImprecisionProfile.uniform(f, eps)
        up = corrected_bound(f, beta0, prof).value
        lo = seesaw_lower_bound(f, t, prof).value
        print(f"   eps={eps:<5}  bound={up:.8f}  seesaw={lo:.8f}  gap={up - lo:.1e}")
