"""Theory application module."""

from fedsdwc_sim.features.theory.application.bound import (
    gaussian_log_density,
    gaussian_score,
    lhs_gap,
    posterior_gain,
    posterior_mean_y,
    rhs_bound,
    sample_ood_marginal,
    scaling_slope,
    verify_bound,
)

__all__ = [
    "gaussian_log_density",
    "gaussian_score",
    "lhs_gap",
    "posterior_gain",
    "posterior_mean_y",
    "rhs_bound",
    "sample_ood_marginal",
    "scaling_slope",
    "verify_bound",
]
