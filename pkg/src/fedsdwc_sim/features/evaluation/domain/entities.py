"""Evaluation domain entities."""

import math
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from fedsdwc_sim.features.data.domain.enums import CorruptionKind


class CorruptionSetting(BaseModel):
    """One corrupted copy of the ID test set."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: CorruptionKind
    severity: int = Field(ge=1, le=5)

    @property
    def key(self) -> str:
        return f"{self.kind.value}:{self.severity}"


def _default_corruptions() -> list[CorruptionSetting]:
    return [
        CorruptionSetting(kind=kind, severity=severity)
        for kind in CorruptionKind
        for severity in (1, 3, 5)
    ]


class EvaluationConfig(BaseModel):
    """Evaluation sets and prediction mode."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    num_test: int = Field(default=2000, ge=1, description="Clean ID test examples")
    num_ood: int = Field(default=2000, ge=1, description="Semantic-shift examples")
    corruptions: list[CorruptionSetting] = Field(default_factory=_default_corruptions)
    style_shifts: list[float] = Field(
        default_factory=lambda: [2.0], description="ID-C sets shifting the mean of p(z)"
    )
    monte_carlo: bool = Field(default=False, description="Sample latents instead of zero noise")
    mc_seed: int = 0
    id_scores_include_idc: bool = False
    tpr_target: float = Field(default=0.95, gt=0.0, le=1.0)
    batch_size: int = Field(default=4096, ge=1)
    track_rounds: bool = Field(default=False, description="ID accuracy snapshot per round")

    @field_validator("style_shifts")
    @classmethod
    def check_shifts(cls, v: list[float]) -> list[float]:
        """A zero shift would reproduce the ID set."""
        if any(not math.isfinite(s) or s == 0.0 for s in v):
            raise ValueError("style shifts must be finite and nonzero")
        return v


@dataclass
class DetectionScore:
    """Semantic-shift detection quality for one OOD set."""

    auroc: float
    fpr95: float

    def to_dict(self) -> dict[str, float]:
        return {"auroc": self.auroc, "fpr95": self.fpr95}


@dataclass
class ScoreReport:
    """ID accuracy, covariate-shift accuracies and detection scores."""

    id_acc: float
    idc_acc: dict[str, float] = field(default_factory=dict)
    detection: dict[str, DetectionScore] = field(default_factory=dict)
    num_eval_examples: dict[str, int] = field(default_factory=dict)

    @property
    def mean_idc_acc(self) -> float | None:
        """Unweighted mean over ID-C entries."""
        if not self.idc_acc:
            return None
        return sum(self.idc_acc.values()) / len(self.idc_acc)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id_acc": self.id_acc,
            "idc_acc": dict(self.idc_acc),
            "detection": {name: score.to_dict() for name, score in self.detection.items()},
            "num_eval_examples": dict(self.num_eval_examples),
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "ScoreReport":
        return cls(
            id_acc=float(payload["id_acc"]),
            idc_acc={k: float(v) for k, v in payload.get("idc_acc", {}).items()},
            detection={
                k: DetectionScore(auroc=float(v["auroc"]), fpr95=float(v["fpr95"]))
                for k, v in payload.get("detection", {}).items()
            },
            num_eval_examples={k: int(v) for k, v in payload.get("num_eval_examples", {}).items()},
        )

    def rows(self) -> list[dict[str, Any]]:
        """Flat one-row-per-metric view used for CSV."""

        def row(metric: str, key: str, value: float) -> dict[str, Any]:
            return {
                "metric": metric,
                "key": key,
                "value": value,
                "num_examples": self.num_eval_examples.get(key),
            }

        rows = [row("id_acc", "id", self.id_acc)]
        rows += [row("idc_acc", key, value) for key, value in sorted(self.idc_acc.items())]
        for name, score in sorted(self.detection.items()):
            rows += [row(metric, name, value) for metric, value in score.to_dict().items()]
        return rows
