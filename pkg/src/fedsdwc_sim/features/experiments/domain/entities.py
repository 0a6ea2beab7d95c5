"""Experiment configuration tree."""

import re
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fedsdwc_sim.features.data.domain.entities import ScmSpec
from fedsdwc_sim.features.evaluation.domain.entities import EvaluationConfig
from fedsdwc_sim.features.federation.domain.entities import FederationConfig
from fedsdwc_sim.features.model.domain.entities import ModelConfig
from fedsdwc_sim.features.model.domain.enums import CausalMode
from fedsdwc_sim.features.objective.domain.entities import ObjectiveConfig
from fedsdwc_sim.features.theory.domain.entities import TheoryConfig

_ARM_NAME = re.compile(r"^[A-Za-z0-9_.-]+$")


class DataSection(BaseModel):
    """Training data: the SCM, its size and the client split."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scm: ScmSpec = Field(default_factory=ScmSpec)
    num_train: int = Field(default=4000, ge=1)
    concentration: float = Field(default=0.5, gt=0.0, description="Dirichlet alpha")


class SweepArm(BaseModel):
    """Named override set; unset fields keep the base config value."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    causal_mode: CausalMode | None = None
    intervention_scale: float | None = Field(default=None, ge=0.0)
    concentration: float | None = Field(default=None, gt=0.0)

    @field_validator("name")
    @classmethod
    def check_name(cls, v: str) -> str:
        """Arm names become directory names."""
        if not _ARM_NAME.match(v):
            raise ValueError("arm names may only contain letters, digits, '.', '_' and '-'")
        return v


class SweepConfig(BaseModel):
    """Ablation arms and repeated master seeds."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    arms: list[SweepArm] = Field(default_factory=list)
    seeds: list[int] = Field(default_factory=list)

    @field_validator("arms")
    @classmethod
    def unique_arms(cls, v: list[SweepArm]) -> list[SweepArm]:
        names = [arm.name for arm in v]
        if len(set(names)) != len(names):
            raise ValueError("arm names must be unique")
        return v

    @property
    def enabled(self) -> bool:
        return bool(self.arms) or len(self.seeds) > 1


class ExperimentConfig(BaseModel):
    """Everything a run needs; ``seed`` determines every random stream.

    ``federation.seed`` is always derived from ``seed`` when the config is
    resolved.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = 0
    out: Path | None = Field(default=None, description="Run directory; FEDSDWC_OUT when unset")
    arm: str | None = Field(default=None, description="Sweep arm this run belongs to")
    data: DataSection = Field(default_factory=DataSection)
    model: ModelConfig = Field(default_factory=ModelConfig)
    objective: ObjectiveConfig = Field(default_factory=ObjectiveConfig)
    federation: FederationConfig = Field(default_factory=FederationConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    theory: TheoryConfig = Field(default_factory=TheoryConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)

    @model_validator(mode="after")
    def check_consistency(self) -> "ExperimentConfig":
        scm = self.data.scm
        if self.model.dim_x != scm.dim_x:
            raise ValueError(f"model.dim_x ({self.model.dim_x}) must equal data.scm.dim_x")
        if self.model.num_classes != scm.num_classes:
            raise ValueError("model.num_classes must equal data.scm.num_classes")
        if self.federation.num_clients > self.data.num_train:
            raise ValueError("federation.num_clients exceeds data.num_train")
        return self

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json")
