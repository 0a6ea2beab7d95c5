"""Experiment domain entities."""

from fedsdwc_sim.features.experiments.domain.entities import (
    DataSection,
    ExperimentConfig,
    SweepArm,
    SweepConfig,
)

__all__ = ["DataSection", "ExperimentConfig", "SweepArm", "SweepConfig"]
