"""One-defect Hadamard quantum walk on the integer line.

Simulation, exact first-return series, unit-circle spectral analysis, and
closed-form time-averaged / stationary limit measures, each cross-validating
the others.
"""

from .walk import (
    DomainError,
    Measure,
    WalkParams,
    WalkState,
    coin_at,
    evolve,
    measure,
    return_probability,
    step,
    time_average,
)
from .series import (
    PowerSeries,
    first_return_series,
    path_oracle_first_return,
    psi_origin,
    psi_origin_sequence,
    rstar,
    rstar_series,
    sqrt1z4_series,
    xi_star,
)
from .spectral import (
    SpectralPoint,
    big_lambda0,
    f_tilde,
    lambda_tilde,
    residue_norms_origin,
    singular_points,
    xi_tilde0_series,
)
from .limits import (
    StationaryComparison,
    Theta0,
    TrigPack,
    asymptotic_psi_origin,
    c_phi,
    cgmv_limit_origin,
    compare_stationary_timeavg,
    mu_inf,
    mu_inf_origin,
    stationary_measure,
    theta0,
    total_point_mass,
)

__all__ = [
    "DomainError",
    "Measure",
    "PowerSeries",
    "SpectralPoint",
    "StationaryComparison",
    "Theta0",
    "TrigPack",
    "WalkParams",
    "WalkState",
    "asymptotic_psi_origin",
    "big_lambda0",
    "c_phi",
    "cgmv_limit_origin",
    "coin_at",
    "compare_stationary_timeavg",
    "evolve",
    "f_tilde",
    "first_return_series",
    "lambda_tilde",
    "measure",
    "mu_inf",
    "mu_inf_origin",
    "path_oracle_first_return",
    "psi_origin",
    "psi_origin_sequence",
    "residue_norms_origin",
    "return_probability",
    "rstar",
    "rstar_series",
    "singular_points",
    "sqrt1z4_series",
    "stationary_measure",
    "step",
    "theta0",
    "time_average",
    "total_point_mass",
    "xi_star",
    "xi_tilde0_series",
]

__version__ = "0.1.0"
