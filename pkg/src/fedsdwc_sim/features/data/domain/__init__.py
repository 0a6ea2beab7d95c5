"""Data domain entities and enums."""

from fedsdwc_sim.features.data.domain.entities import (
    OOD_LABEL,
    LabeledDataset,
    PartitionSpec,
    ScmSpec,
)
from fedsdwc_sim.features.data.domain.enums import CorruptionKind, DistributionTag

__all__ = [
    "OOD_LABEL",
    "CorruptionKind",
    "DistributionTag",
    "LabeledDataset",
    "PartitionSpec",
    "ScmSpec",
]
