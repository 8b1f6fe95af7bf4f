"""Interpolating Hamiltonians for discrete symplectic oscillator dynamics.

Given any real 2x2 unit-determinant one-step map of the unit harmonic
oscillator, this package classifies its eigenstructure, constructs the
complete branch family of traceless matrix logarithms and the quadratic
Hamiltonians they generate (or proves that none exists), and rebuilds
continuous trajectories that pass through every discrete phase point.
"""

from .algebra import (
    Mat2C,
    closed_exp,
    eigenvalues2,
    log_branch,
    max_diff,
    principal_polar,
    taylor_exp,
)
from .classifier import CaseTag, EigenStructure, classify, criticality_gap, jordan_decompose
from .errors import (
    BadParams,
    CriticalTau,
    DegenerateBranch,
    InvalidTau,
    NoHamiltonian,
    NotApplicable,
    NotDefective,
    NotSymplectic,
    NotTraceless,
    ShadowOscError,
    Singular,
    UnknownIntegrator,
    ZeroEigenvalue,
)
from .flow import (
    PhaseState,
    Trajectory,
    continuous_state,
    discrete_orbit,
    euler_closed_form,
    measure_period,
    rotation_sense,
    sample_trajectory,
    write_trajectory_csv,
)
from .integrators import (
    TransitionMatrix,
    compose,
    custom,
    double_euler,
    euler,
    make,
    position_verlet,
    velocity_verlet,
    vp,
)
from .shadow import (
    BranchFamily,
    CaseIIParams,
    Generator,
    GeneratorFamily,
    Obstruction,
    ShadowHamiltonian,
    enumerate_branches,
    euler_hamiltonian,
    euler_rate,
    generator_distinct,
    generator_jordan,
    generator_scalar,
    generators_for,
    hamiltonian_from_generator,
)
from .verify import (
    CheckResult,
    VerificationReport,
    check_coincidence,
    check_conservation,
    check_exponential,
    check_regime_map,
    full_suite,
    locate_vp_critical_tau,
    series_exp,
)

__version__ = "0.1.0"
