"""Objective domain entities."""

from dataclasses import dataclass, fields

import torch
from pydantic import BaseModel, ConfigDict, Field

from fedsdwc_sim.features.model.domain.entities import LatentNoise, ModelConfig


class ObjectiveConfig(BaseModel):
    """Estimator and stabilization choices of the training objective."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    weight_clip: float = Field(default=10.0, gt=0.0, description="Upper clip of 1/q(y|x)")
    prob_floor: float = Field(default=1e-8, gt=0.0, lt=1.0)
    detach_clean: bool = Field(default=False, description="Stop-gradient on the clean pass")
    loss_mc_samples: int = Field(default=1, ge=1, description="Predictive draws per loss")
    ic_on_augmented: bool = True


@dataclass
class LossBreakdown:
    """Batch-mean loss terms as 0-d tensors (``total`` keeps its graph)."""

    ce: torch.Tensor
    elbo_weighted: torch.Tensor
    recon_x: torch.Tensor
    recon_xs: torch.Tensor
    recon_xz: torch.Tensor
    kl_s: torch.Tensor
    kl_z: torch.Tensor
    kl_c: torch.Tensor
    ic: torch.Tensor
    total: torch.Tensor

    def to_dict(self) -> dict[str, float]:
        """Plain floats for logging."""
        return {f.name: float(getattr(self, f.name).detach()) for f in fields(self)}


@dataclass
class ObjectiveNoise:
    """Randomness of one loss evaluation.

    ``predictive`` has batch shape ``(M, n)`` and feeds q(y|x) (shared by both
    intervention passes); ``latent`` is the single draw used by the ELBO
    bracket; ``intervention`` perturbs x_z.
    """

    predictive: LatentNoise
    latent: LatentNoise
    intervention: torch.Tensor

    @classmethod
    def sample(
        cls,
        n: int,
        config: ModelConfig,
        generator: torch.Generator,
        mc_samples: int = 1,
        dtype: torch.dtype = torch.float32,
    ) -> "ObjectiveNoise":
        predictive = LatentNoise.sample((mc_samples, n), config, generator, dtype)
        latent = LatentNoise.sample((n,), config, generator, dtype)
        intervention = torch.randn(n, config.split_width, generator=generator, dtype=dtype)
        return cls(predictive=predictive, latent=latent, intervention=intervention)

    def select(self, rows: torch.Tensor) -> "ObjectiveNoise":
        """Noise for a reindexed batch (row ``i`` of the result is row ``rows[i]``)."""
        return ObjectiveNoise(
            predictive=self.predictive.index(rows),
            latent=self.latent.index(rows),
            intervention=self.intervention[rows],
        )
