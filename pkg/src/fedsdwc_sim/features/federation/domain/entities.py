"""Federation domain entities."""

import math
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from fedsdwc_sim.features.model.domain.entities import ModelParams


class FederationConfig(BaseModel):
    """Server loop and local training hyperparameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rounds: int = Field(default=30, ge=0, description="Communication rounds T")
    local_epochs: int = Field(default=5, ge=1, description="Local epochs E")
    batch_size: int = Field(default=64, ge=1, description="Local batch size B")
    learning_rate: float = Field(default=0.001, ge=0.0, description="Plain SGD step size")
    max_grad_norm: float | None = Field(
        default=10.0, gt=0.0, description="Global gradient-norm clip per step; null disables"
    )
    num_clients: int = Field(default=10, ge=1, description="Number of clients K")
    participation_fraction: float = Field(default=1.0, gt=0.0, le=1.0)
    intervention_scale: float = Field(default=1.0, ge=0.0)
    fourier_mix_ratio: float = Field(default=0.5, ge=0.0, le=1.0)
    seed: int = 0
    eval_every: int = Field(default=1, ge=1, description="Rounds between evaluation hooks")

    @property
    def num_participants(self) -> int:
        """ceil(fraction * K), at least one."""
        return max(1, math.ceil(self.participation_fraction * self.num_clients - 1e-9))


@dataclass
class ClientResult:
    """Locally trained parameters and the last step's loss terms."""

    client_id: int
    params: ModelParams
    final_loss: dict[str, float]
    num_steps: int


@dataclass
class RoundRecord:
    """One server round."""

    round_index: int
    participants: list[int]
    client_losses: dict[int, dict[str, float]]
    wall_time: float
    evaluation: dict[str, float] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "round": self.round_index,
            "participants": self.participants,
            "client_losses": {str(k): v for k, v in self.client_losses.items()},
            "wall_time": self.wall_time,
            "evaluation": self.evaluation,
        }


@dataclass
class TrainingLog:
    """All round records plus the final global parameters."""

    records: list[RoundRecord] = field(default_factory=list)
    final_params: ModelParams | None = None

    def __len__(self) -> int:
        return len(self.records)
