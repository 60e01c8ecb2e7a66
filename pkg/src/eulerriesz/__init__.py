"""Pseudo-spectral toolkit for the damped Euler-Riesz system on a torus."""

from .errors import (
    BlowUpError,
    ConfigError,
    DomainError,
    EulerRieszError,
    FitError,
    FormatError,
)
from .grid import Grid, make_grid
from .spectral import (
    Field,
    apply_lambda,
    dealias,
    divergence,
    field_from_coeffs,
    field_from_values,
    gradient,
    inner,
    integral,
    inverse_transform,
    l2_norm,
    linf_norm,
    mean,
    sobolev_norm,
    transform,
    zero_mean_project,
)
from .state import State, alpha_window, make_state
from .dynamics import (
    PropagatorTable,
    StateDerivative,
    build_propagator,
    compute_rhs,
    linear_eigenvalues,
    linear_matrix,
    riesz_force,
)
from .config import SimConfig, dump_config, load_config, parse_config_text
from .scenarios import build_initial_state, grid_for, scenario_is_linear
from .stepping import RunResult, Stepper, plan_steps, run, suggest_dt
from .diagnostics import (
    DiagnosticsRecord,
    collect_diagnostics,
    dissipation,
    hypo_cross,
    hypocoercive_y,
    interaction_energy,
    kinetic_energy,
    mean_corrected_momentum,
    modulated_energy,
    momentum,
    sigma_energy,
    sobolev_x,
    total_energy,
    weighted_density_sq,
    weighted_velocity_sq,
)
from .decay import (
    FitResult,
    case_a_applicable,
    case_b_applicable,
    dispersive_window,
    fit_algebraic_rate,
    fit_envelope_rate,
    fit_exponential_rate,
    predict_rates,
    sharp_rate,
    spectral_gap,
    weak_rate,
)
from .inequalities import (
    RatioReport,
    SUITES,
    adjoint_pair,
    commutator_ratio,
    gn_ratio,
    interpolation_ratio,
    moser_ratio,
    run_all_suites,
    run_suite,
)
from .seriesio import CSV_COLUMNS, SeriesWriter, read_series
from .checkpoint import load_checkpoint, save_checkpoint
from .manifest import build_manifest, read_manifest, write_manifest
from .oracle import run_spectral_oracle

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "ConfigError",
    "DomainError",
    "EulerRieszError",
    "FitError",
    "FormatError",
    "Grid",
    "make_grid",
    "Field",
    "apply_lambda",
    "dealias",
    "divergence",
    "field_from_coeffs",
    "field_from_values",
    "gradient",
    "inner",
    "integral",
    "inverse_transform",
    "l2_norm",
    "linf_norm",
    "mean",
    "sobolev_norm",
    "transform",
    "zero_mean_project",
    "State",
    "alpha_window",
    "make_state",
    "PropagatorTable",
    "StateDerivative",
    "build_propagator",
    "compute_rhs",
    "linear_eigenvalues",
    "linear_matrix",
    "riesz_force",
    "SimConfig",
    "dump_config",
    "load_config",
    "parse_config_text",
    "build_initial_state",
    "grid_for",
    "scenario_is_linear",
    "RunResult",
    "Stepper",
    "plan_steps",
    "run",
    "suggest_dt",
    "DiagnosticsRecord",
    "collect_diagnostics",
    "dissipation",
    "hypo_cross",
    "hypocoercive_y",
    "interaction_energy",
    "kinetic_energy",
    "mean_corrected_momentum",
    "modulated_energy",
    "momentum",
    "sigma_energy",
    "sobolev_x",
    "total_energy",
    "weighted_density_sq",
    "weighted_velocity_sq",
    "FitResult",
    "case_a_applicable",
    "case_b_applicable",
    "dispersive_window",
    "fit_algebraic_rate",
    "fit_envelope_rate",
    "fit_exponential_rate",
    "predict_rates",
    "sharp_rate",
    "spectral_gap",
    "weak_rate",
    "RatioReport",
    "SUITES",
    "adjoint_pair",
    "commutator_ratio",
    "gn_ratio",
    "interpolation_ratio",
    "moser_ratio",
    "run_all_suites",
    "run_suite",
    "CSV_COLUMNS",
    "SeriesWriter",
    "read_series",
    "load_checkpoint",
    "save_checkpoint",
    "build_manifest",
    "read_manifest",
    "write_manifest",
    "run_spectral_oracle",
]
