"""Steering-inequality bounds under imprecise trusted measurements."""

from .bounds import (MuObjective, corrected_bound, corrected_bound_equal_eps, erased_share,
                     first_order, mub_pair_model_strategy, mub_pair_model_value, optimal_mu,
                     stationary_points)
from .dominance import (DominanceCertificate, dominance_operator, sample_close_state,
                        saturating_witness, z_coeff)
from .linalg import eig_hermitian, fidelity_pure, is_psd, kron, min_eig
from .scenario import (BoundResult, EnumerationInfeasible, ImprecisionProfile, SteeringFunctional,
                       TargetMeasurements, beta0_exact, chi, correlator_to_probability_form,
                       elegant_bell, evaluate, mub_correlation, qubit_three_setting)
from .seesaw import LHSStrategy, constrained_ray_update, plateau_threshold, seesaw_lower_bound
from .targets import (BasisFamily, check_mub, family_by_label, fourier_matrix, mub_pair,
                      pauli_bases, wh_mubs)

__version__ = "0.1.0"
