"""Model domain entities and enums."""

from fedsdwc_sim.features.model.domain.entities import (
    HEADS,
    STD_FLOOR,
    DecodedOutputs,
    LatentNoise,
    LatentSample,
    MixtureHead,
    ModelConfig,
    ModelParams,
)
from fedsdwc_sim.features.model.domain.enums import Activation, CausalMode

__all__ = [
    "HEADS",
    "STD_FLOOR",
    "Activation",
    "CausalMode",
    "DecodedOutputs",
    "LatentNoise",
    "LatentSample",
    "MixtureHead",
    "ModelConfig",
    "ModelParams",
]
