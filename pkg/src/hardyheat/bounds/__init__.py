from .checks import (
    Estimate,
    check_cooling,
    check_decay,
    check_spectral_gap,
    check_sup_torsion,
    check_torsion,
    check_trace,
    resolution_levels,
    rho_moment2,
    run_checks,
)
from .fit import DecayFit, fit_decay_exponent, fit_sqrt_coefficient
from .formulas import (
    HardyParameters,
    cooling_bound_rhs,
    cooling_threshold,
    decay_bound_rhs,
    decay_coefficient,
    hardy_parameters,
    horn_beta_window,
    horn_betas,
    horn_predicted_exponent,
    rho_form_decay_coefficient,
    spectral_gap_threshold,
    sup_torsion_bound_rhs,
    torsion_bound_rhs,
    trace_bound_rhs,
)
from .horn import ExponentRow, HornStudy, exponent_row, horn_alpha_admissible, horn_heat_study
from .report import BOUND_IDS, CSV_COLUMNS, BoundReport, spectral_gap_check, trace_bound_check, verify

__all__ = [
    "BOUND_IDS",
    "CSV_COLUMNS",
    "BoundReport",
    "DecayFit",
    "Estimate",
    "ExponentRow",
    "HardyParameters",
    "HornStudy",
    "check_cooling",
    "check_decay",
    "check_spectral_gap",
    "check_sup_torsion",
    "check_torsion",
    "check_trace",
    "cooling_bound_rhs",
    "cooling_threshold",
    "decay_bound_rhs",
    "decay_coefficient",
    "exponent_row",
    "fit_decay_exponent",
    "fit_sqrt_coefficient",
    "hardy_parameters",
    "horn_alpha_admissible",
    "horn_beta_window",
    "horn_betas",
    "horn_heat_study",
    "horn_predicted_exponent",
    "resolution_levels",
    "rho_form_decay_coefficient",
    "rho_moment2",
    "run_checks",
    "spectral_gap_check",
    "spectral_gap_threshold",
    "sup_torsion_bound_rhs",
    "torsion_bound_rhs",
    "trace_bound_check",
    "trace_bound_rhs",
    "verify",
]
