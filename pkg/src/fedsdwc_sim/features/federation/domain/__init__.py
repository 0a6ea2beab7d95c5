"""Federation domain entities."""

from fedsdwc_sim.features.federation.domain.entities import (
    ClientResult,
    FederationConfig,
    RoundRecord,
    TrainingLog,
)

__all__ = ["ClientResult", "FederationConfig", "RoundRecord", "TrainingLog"]
