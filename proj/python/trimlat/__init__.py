"""Trimmed lattice operators: spectral gaps, positivity checks, disorder experiments."""

from ._core import (
    AndersonModel,
    BetaMode,
    BoxRegion,
    CheegerResult,
    CriterionResult,
    DensityCheck,
    EnergyCurve,
    GroundState,
    GsmcReport,
    GsmcRow,
    IsoperimetricCheck,
    KappaBound,
    KappaMode,
    KappaScan,
    LatticeOperator,
    ModelParams,
    OperatorKind,
    Potential,
    PvpReport,
    PvpSample,
    Sandwich,
    ScaledValue,
    SiteDistribution,
    SiteKeyedRng,
    SolverInfo,
    SpecAvgReport,
    TrimPattern,
    VerifyLevel,
    WegnerReport,
    assemble,
    beta_bruteforce,
    beta_of_set,
    cheeger_free_lower,
    combined_t_lower,
    count_eigs,
    default_t_grid,
    delta_lower,
    delta_lower_scaled,
    delta_t_lower,
    disorder_on_box,
    energy_curve,
    fmt_real,
    format_site,
    ground_energy,
    ground_energy_mc,
    ground_state_pf,
    isoperimetric_check,
    k_star,
    kappa_lower,
    kappa_scan,
    pvp_check,
    run_acceptance,
    sample,
    sandwich_t,
    spectral_averaging_check,
    t_large_lower,
    wegner_experiment,
)

__all__ = [
    "AndersonModel",
    "BetaMode",
    "BoxRegion",
    "CheegerResult",
    "CriterionResult",
    "DensityCheck",
    "EnergyCurve",
    "GroundState",
    "GsmcReport",
    "GsmcRow",
    "IsoperimetricCheck",
    "KappaBound",
    "KappaMode",
    "KappaScan",
    "LatticeOperator",
    "ModelParams",
    "OperatorKind",
    "Potential",
    "PvpReport",
    "PvpSample",
    "Sandwich",
    "ScaledValue",
    "SiteDistribution",
    "SiteKeyedRng",
    "SolverInfo",
    "SpecAvgReport",
    "TrimPattern",
    "VerifyLevel",
    "WegnerReport",
    "assemble",
    "beta_bruteforce",
    "beta_of_set",
    "cheeger_free_lower",
    "combined_t_lower",
    "count_eigs",
    "default_t_grid",
    "delta_lower",
    "delta_lower_scaled",
    "delta_t_lower",
    "disorder_on_box",
    "energy_curve",
    "fmt_real",
    "format_site",
    "ground_energy",
    "ground_energy_mc",
    "ground_state_pf",
    "isoperimetric_check",
    "k_star",
    "kappa_lower",
    "kappa_scan",
    "pvp_check",
    "run_acceptance",
    "sample",
    "sandwich_t",
    "spectral_averaging_check",
    "t_large_lower",
    "wegner_experiment",
]
