"""Data domain entities."""

import hashlib
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fedsdwc_sim.features.data.domain.enums import DistributionTag
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError

OOD_LABEL = -1


class ScmSpec(BaseModel):
    """Structural causal model that generates the synthetic observations.

    ``mixing_seed`` fixes every mechanism (class means, latent maps and the
    invertible mixing ``f``); sample seeds only drive the noise.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    dim_c: int = Field(default=4, ge=1, description="Latent content dimension")
    dim_z: int = Field(default=4, ge=1, description="Latent style dimension")
    dim_x: int = Field(default=20, ge=2, description="Observed dimension (even)")
    num_classes: int = Field(default=4, ge=1)
    noise_sigma: float = Field(default=0.1, ge=0.0, description="Observation noise std")
    style_prior_mean: tuple[float, ...] | None = Field(
        default=None, description="Mean of p(z); zeros when omitted"
    )
    mixing_seed: int = 0
    class_separation: float = Field(default=3.0, gt=0.0)
    content_std: float = Field(default=1.0, gt=0.0)
    weak_link: float = Field(default=0.01, ge=0.0, description="Strength of z in s")

    @field_validator("noise_sigma", "class_separation", "content_std", "weak_link")
    @classmethod
    def check_finite(cls, v: float) -> float:
        """Reject NaN and infinities."""
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v

    @model_validator(mode="after")
    def check_shapes(self) -> "ScmSpec":
        """dim_x must split evenly and the style mean must match dim_z."""
        if self.dim_x % 2 != 0:
            raise ValueError("dim_x must be even")
        if self.style_prior_mean is not None:
            if len(self.style_prior_mean) != self.dim_z:
                raise ValueError("style_prior_mean must have length dim_z")
            if not all(math.isfinite(v) for v in self.style_prior_mean):
                raise ValueError("style_prior_mean must be finite")
        return self

    @property
    def half_width(self) -> int:
        return self.dim_x // 2

    def style_mean(self) -> np.ndarray:
        if self.style_prior_mean is None:
            return np.zeros(self.dim_z)
        return np.asarray(self.style_prior_mean, dtype=np.float64)

    def fingerprint(self) -> str:
        """Short stable hash recorded in dataset provenance."""
        payload = self.model_dump_json().encode("utf-8")
        return hashlib.blake2b(payload, digest_size=8).hexdigest()


@dataclass
class LabeledDataset:
    """Feature matrix with labels, regime tag and provenance."""

    features: np.ndarray
    labels: np.ndarray
    tag: DistributionTag
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.features.ndim != 2:
            raise InvalidInputError("features", "expected a 2-D matrix")
        if self.labels.shape != (self.features.shape[0],):
            raise InvalidInputError("labels", "length must equal the feature row count")

    def __len__(self) -> int:
        return int(self.features.shape[0])

    @property
    def dim_x(self) -> int:
        return int(self.features.shape[1])

    def subset(self, indices: np.ndarray) -> "LabeledDataset":
        """View restricted to ``indices`` (a client's shard)."""
        return LabeledDataset(
            features=self.features[indices],
            labels=self.labels[indices],
            tag=self.tag,
            provenance={**self.provenance, "subset_size": int(len(indices))},
        )

    def to_dict(self) -> dict[str, Any]:
        """Metadata record (everything but the arrays)."""
        return {
            "tag": self.tag.value,
            "provenance": self.provenance,
            "num_examples": len(self),
            "dim_x": self.dim_x,
        }


@dataclass
class PartitionSpec:
    """Per-client example indices with data-size proportional weights."""

    client_indices: list[np.ndarray]
    concentration: float
    client_weights: np.ndarray

    @property
    def num_clients(self) -> int:
        return len(self.client_indices)

    @property
    def num_examples(self) -> int:
        return int(sum(len(idx) for idx in self.client_indices))

    @classmethod
    def from_indices(
        cls, client_indices: list[np.ndarray], concentration: float
    ) -> "PartitionSpec":
        """Build the spec, deriving weights from shard sizes."""
        sizes = np.array([len(idx) for idx in client_indices], dtype=np.float64)
        return cls(
            client_indices=[np.sort(np.asarray(idx, dtype=np.int64)) for idx in client_indices],
            concentration=concentration,
            client_weights=sizes / sizes.sum(),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "concentration": self.concentration,
            "client_weights": self.client_weights.tolist(),
            "client_indices": [idx.tolist() for idx in self.client_indices],
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "PartitionSpec":
        """Rebuild from JSON; weights are recomputed from the shard sizes."""
        return cls.from_indices(
            [np.asarray(idx, dtype=np.int64) for idx in payload["client_indices"]],
            float(payload["concentration"]),
        )
