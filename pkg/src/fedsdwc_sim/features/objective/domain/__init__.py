"""Objective domain entities."""

from fedsdwc_sim.features.objective.domain.entities import (
    LossBreakdown,
    ObjectiveConfig,
    ObjectiveNoise,
)

__all__ = ["LossBreakdown", "ObjectiveConfig", "ObjectiveNoise"]
