"""Objective application module."""

from fedsdwc_sim.features.objective.application.losses import (
    elbo_loss,
    elbo_terms,
    gaussian_kl,
    intervention_loss,
    total_loss,
)

__all__ = ["elbo_loss", "elbo_terms", "gaussian_kl", "intervention_loss", "total_loss"]
