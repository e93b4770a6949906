"""Multiphoton coherent states on the harmonic oscillator.

Truncated number-basis numerics for the order-k ladder algebra, its
eigenstate families, their cat decompositions, Wigner fields, and the
measures that resolve the identity on each class. Closed forms and
independent numerics are cross-checked everywhere; quantities that cannot
be trusted raise instead of returning.
"""

from .errors import (
    BoundaryMass,
    DegenerateNorm,
    EdgeSupport,
    LeakageExceeded,
    McskitError,
    NoCandidate,
    Overflow,
    QuadratureFailure,
    RouteMismatch,
    TailTooHeavy,
    UnsupportedOrder,
    WindowTooNarrow,
)
from .fock import (
    DEFAULT_LEAK_TOL,
    DEFAULT_N_MAX,
    CommutatorResiduals,
    FockVector,
    LadderPower,
    LadderSpectrum,
    apply_k_ladder,
    apply_lowering,
    apply_raising,
    basis_state,
    hamiltonian_apply,
    inner,
    ladder_eigenstate,
    ladder_spectrum,
    lowering_power,
    number_falling_apply,
    pha_commutator_check,
    raising_power,
    time_evolve,
)
from .states import (
    MCSLabel,
    MomentSet,
    a_norm_closed,
    a_norm_series,
    build_mcs,
    eigenvalue_residual,
    geometric_phase,
    moments,
    norm_sum,
    numeric_moments,
    revival_phase,
)
from .decomposition import (
    ScsSuperposition,
    WaveSample,
    coherent_from_classes,
    coherent_state,
    component_norm,
    default_x_grid,
    density_movie,
    dft_matrix,
    fock_wavefunction,
    mcs_as_scs,
    mcs_wavefunction,
    scs_wavefunction,
)
from .wigner import (
    Marginals,
    PhaseGrid,
    WignerField,
    default_phase_grid,
    marginals,
    negativity_volume,
    purity,
    wigner_cat2,
    wigner_cat3,
    wigner_closed,
    wigner_numeric,
    wigner_scs,
)
from .completeness import (
    MeasureCandidate,
    MomentReport,
    identity_block,
    identity_resolution_numeric,
    moment_check,
    register_measure,
    registered_measure,
    root_exponential_density,
)
from .verify import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "BoundaryMass", "DegenerateNorm", "EdgeSupport", "LeakageExceeded",
    "McskitError", "NoCandidate", "Overflow", "QuadratureFailure",
    "RouteMismatch", "TailTooHeavy", "UnsupportedOrder", "WindowTooNarrow",
    "DEFAULT_LEAK_TOL", "DEFAULT_N_MAX", "CommutatorResiduals", "FockVector",
    "LadderPower", "LadderSpectrum", "apply_k_ladder", "apply_lowering",
    "apply_raising", "basis_state", "hamiltonian_apply", "inner",
    "ladder_eigenstate", "ladder_spectrum", "lowering_power",
    "number_falling_apply",
    "pha_commutator_check", "raising_power", "time_evolve",
    "MCSLabel", "MomentSet", "a_norm_closed", "a_norm_series", "build_mcs",
    "eigenvalue_residual", "geometric_phase", "moments", "norm_sum",
    "numeric_moments", "revival_phase",
    "ScsSuperposition", "WaveSample", "coherent_from_classes",
    "coherent_state", "component_norm", "default_x_grid", "density_movie",
    "dft_matrix", "fock_wavefunction", "mcs_as_scs", "mcs_wavefunction",
    "scs_wavefunction",
    "Marginals", "PhaseGrid", "WignerField", "default_phase_grid",
    "marginals", "negativity_volume", "purity", "wigner_cat2", "wigner_cat3",
    "wigner_closed", "wigner_numeric", "wigner_scs",
    "MeasureCandidate", "MomentReport", "identity_block",
    "identity_resolution_numeric", "moment_check", "register_measure",
    "registered_measure", "root_exponential_density",
    "CheckResult", "run_suite",
]
