"""Shared domain types."""

from fedsdwc_sim.shared.domain.exceptions import (
    AggregationError,
    ArtifactNotFoundError,
    ConfigurationError,
    InvalidInputError,
    NumericError,
    PartitionError,
    ShapeMismatchError,
    SimulationError,
)

__all__ = [
    "AggregationError",
    "ArtifactNotFoundError",
    "ConfigurationError",
    "InvalidInputError",
    "NumericError",
    "PartitionError",
    "ShapeMismatchError",
    "SimulationError",
]
