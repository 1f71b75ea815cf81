"""Paley-Wiener spaces on the boundary of the Siegel upper half-space.

Spectral synthesis through Fock-space valued profiles, reproducing kernels,
and sampling on Heisenberg and Fock lattices.
"""

from .fock import (
    FockElement,
    RankOneOperator,
    bargmann_apply,
    bargmann_matrix,
    coherent_trace,
    fock_eval,
    fock_inner,
    fock_kernel,
    fock_norm,
    monomial_norm,
    multi_indices,
    sobolev_multiplier,
)
from .geometry import (
    HeisenbergCoords,
    HeisenbergPoint,
    SiegelPoint,
    group_product,
    homogeneous_norm,
    psi,
    psi_inverse,
    u_adapted_norm,
)
from .kernels import KernelSpec, kernel_closed_form, kernel_eval, kernel_profile, q_form
from .pw import (
    PWFunction,
    SpectralProfile,
    SpectralWindow,
    basis_element,
    fractional_t_derivative,
    plancherel_polya_check,
    profile_from_tau,
    pw_norm,
    restriction_norm_at_height,
    synthesize_eval,
    tau_from_profile,
    wks_check,
)
from .sampling import (
    FrameReport,
    SamplingLattice,
    fock_frame_sweep,
    fock_sampling_sum,
    gamma_points,
    mean_value_bound_check,
    necessary_condition_experiment,
    pw0_frame_report,
    pw_frame_report,
    schur_bound_check,
)
from .sigma import (
    SquareLattice,
    interpolate_from_lattice,
    lattice_points,
    modulated_modulus,
    sigma_derivative,
    sigma_derivative_lower_bound_check,
    sigma_eval,
)

__version__ = "0.1.0"
