"""relchron: relational-time dynamics of a subsystem conditioned on a
quantum clock, checked against time-dependent perturbation theory."""

from .errors import (
    ConfigInvalid,
    DegeneracyNotLifted,
    DegenerateLevel,
    GridMismatch,
    KernelLeak,
    NoConvergence,
    NotHermitian,
    RelchronError,
    VanishingAmplitude,
    VanishingOverlap,
)
from .hilbert import BipartiteSpace, ClockState, GlobalModel, assemble_H_tot0, condition
from .numerics import Spectrum, hermitian_eigensolve, kron, resolvent_apply, spectral_propagator
from .relational import (
    Method,
    RelationalTrajectory,
    effective_potential_full,
    effective_potential_zeroth,
    evolve_clock,
    relational_trajectory_exact,
    relational_trajectory_tipt,
)
from .dynamics import (
    ComparisonReport,
    PotentialTrace,
    compare_trajectories,
    fit_scaling_exponent,
    integrate_tdse_reference,
    tdpt_first_order,
)
from .statics import (
    PerturbedEigenstate,
    assemble_corrected_state,
    tipt_degenerate,
    tipt_first_order,
)
from .scenarios import Branch, ClockCoefficients, SpinScenarioConfig, build_scenario
from .pipeline import ScenarioResult, run_scenario, sweep_scenario

__version__ = "0.1.0"

__all__ = [
    "BipartiteSpace",
    "Branch",
    "ClockCoefficients",
    "ClockState",
    "ComparisonReport",
    "ConfigInvalid",
    "DegeneracyNotLifted",
    "DegenerateLevel",
    "GlobalModel",
    "GridMismatch",
    "KernelLeak",
    "Method",
    "NoConvergence",
    "NotHermitian",
    "PerturbedEigenstate",
    "PotentialTrace",
    "RelationalTrajectory",
    "RelchronError",
    "ScenarioResult",
    "Spectrum",
    "SpinScenarioConfig",
    "VanishingAmplitude",
    "VanishingOverlap",
    "assemble_H_tot0",
    "assemble_corrected_state",
    "build_scenario",
    "compare_trajectories",
    "condition",
    "effective_potential_full",
    "effective_potential_zeroth",
    "evolve_clock",
    "fit_scaling_exponent",
    "hermitian_eigensolve",
    "integrate_tdse_reference",
    "kron",
    "relational_trajectory_exact",
    "relational_trajectory_tipt",
    "resolvent_apply",
    "run_scenario",
    "spectral_propagator",
    "sweep_scenario",
    "tdpt_first_order",
    "tipt_degenerate",
    "tipt_first_order",
]
