"""
Qubits: steering witness vs Elegant Bell
========================================

The three-setting steering inequality loses robustness at once, while the
Elegant Bell expression with complete qubit measurements on Bob's side
keeps its classical value 4 until eps is about 0.0033.
"""

import numpy as np

from steerbound import ImprecisionProfile, TargetMeasurements, beta0_exact, corrected_bound, seesaw_lower_bound
from steerbound.cases import bell_formula, steer_formula
from steerbound.scenario import elegant_bell, qubit_three_setting
from steerbound.targets import pauli_bases

f, t = qubit_three_setting(), TargetMeasurements.from_family(pauli_bases("xzy"))
eb, tb = elegant_bell(), TargetMeasurements.from_family(pauli_bases("xyz"))
b0, b0_eb = beta0_exact(f, t).value, beta0_exact(eb, tb).value

print(" eps      steering   (formula)   elegant-bell  (formula)")
for eps in [0.0, 0.001, 0.002, 0.003, 0.004, 0.005, 0.01, 0.05, 0.1]:
    steer = f.to_correlator(corrected_bound(f, b0, ImprecisionProfile.uniform(f, eps)).value)
    bell = eb.to_correlator(seesaw_lower_bound(eb, tb, ImprecisionProfile.uniform(eb, eps), projective=True).value)
    print(f"{eps:<8} {steer:.6f}   ({steer_formula(eps):.6f})  {bell:.6f}    ({max(4.0, bell_formula(eps)):.6f})")

# a Werner state v|psi-><psi-| + (1-v)I/4 reaches v*3 on the steering witness
print("\nsmallest Werner visibility still certified at eps=0.01:",
      steer_formula(0.01) / 3, "(ideal:", np.sqrt(3) / 3, ")")
