"""Partner potentials of the harmonic oscillator, their quadratic ladder
algebra, and the associated non-linear coherent states."""

__version__ = "0.1.0"

from .algebra import (
    FockRep,
    build_b_via_susy,
    build_fock_rep,
    casimir_check,
    commutator_check,
    ladder_coefficient,
    oscillator_ladder,
    structure_polynomial,
)
from .coherent import (
    CoherentState,
    MeasureDensity,
    build_coherent_state,
    coherent_coeffs,
    coherent_coeffs_closed_form,
    measure_density,
    measure_moment,
    moment_target,
    normalization_c0,
    overlap,
    radial_density,
    resolution_of_unity_check,
)
from .darboux import (
    DEFAULT_GRID,
    GridSpec,
    PartnerParams,
    SeedSolution,
    WavefunctionGrid,
    apply_a_op,
    apply_oscillator_op,
    beta_critical,
    energy_level,
    excited_state,
    first_derivative,
    ground_state,
    hamiltonian_residual,
    oscillator_state,
    partner_potential,
    second_derivative,
    seed_u,
    susy_phi,
    validate_params,
)
from .errors import (
    BetaOutOfRange,
    ConvergenceError,
    DomainError,
    EpsilonTooLarge,
    GammaPoleError,
    GridError,
    ParameterPoleError,
)
from .specfun import (
    SeriesResult,
    gamma,
    hermite,
    hyp_0f2,
    kummer_1f1,
    kummer_1f1_deriv,
    log_scaled_1f1,
    pochhammer,
)

__all__ = [
    "__version__",
    "BetaOutOfRange",
    "CoherentState",
    "ConvergenceError",
    "DEFAULT_GRID",
    "DomainError",
    "EpsilonTooLarge",
    "FockRep",
    "GammaPoleError",
    "GridError",
    "GridSpec",
    "MeasureDensity",
    "ParameterPoleError",
    "PartnerParams",
    "SeedSolution",
    "SeriesResult",
    "WavefunctionGrid",
    "apply_a_op",
    "apply_oscillator_op",
    "beta_critical",
    "build_b_via_susy",
    "build_coherent_state",
    "build_fock_rep",
    "casimir_check",
    "coherent_coeffs",
    "coherent_coeffs_closed_form",
    "commutator_check",
    "energy_level",
    "excited_state",
    "first_derivative",
    "gamma",
    "ground_state",
    "hamiltonian_residual",
    "hermite",
    "hyp_0f2",
    "kummer_1f1",
    "kummer_1f1_deriv",
    "ladder_coefficient",
    "log_scaled_1f1",
    "measure_density",
    "measure_moment",
    "moment_target",
    "normalization_c0",
    "oscillator_ladder",
    "oscillator_state",
    "overlap",
    "partner_potential",
    "pochhammer",
    "radial_density",
    "resolution_of_unity_check",
    "second_derivative",
    "seed_u",
    "structure_polynomial",
    "susy_phi",
    "validate_params",
]
