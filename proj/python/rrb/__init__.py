"""Bayesian inference for the exponential scale from upper record values."""

from ._core import (
    BracketError,
    ConfigError,
    ConvergenceError,
    DomainError,
    Error,
    InsufficientRecordsError,
    UnsupportedError,
    analytic_moments,
    bayes_risk_linear,
    classify_admissible,
    credible_interval,
    estimate,
    example1_data,
    example2_data,
    extract_upper_records,
    length_of_alpha,
    posterior_cdf,
    posterior_from,
    posterior_mode,
    posterior_pdf,
    r1_r2_gap,
    reproduce_table1,
    risk_linear,
    run_interval_sim,
    run_point_sim,
)

__all__ = [name for name in dir() if not name.startswith("_")]
