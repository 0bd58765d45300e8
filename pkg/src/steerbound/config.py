"""Numerical tolerances shared across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12
    psd: float = 1e-9
    unit_norm: float = 1e-12
    spec_unit_norm: float = 1e-8
    trace: float = 1e-9
    mub: float = 1e-10
    feasibility: float = 1e-10


TOL = Tolerances()

# d**n_x above this many deterministic Alice responses is refused by default
ENUMERATION_CAP = 10**6
