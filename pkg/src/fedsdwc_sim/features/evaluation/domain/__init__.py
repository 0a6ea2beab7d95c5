"""Evaluation domain entities."""

from fedsdwc_sim.features.evaluation.domain.entities import (
    CorruptionSetting,
    DetectionScore,
    EvaluationConfig,
    ScoreReport,
)

__all__ = ["CorruptionSetting", "DetectionScore", "EvaluationConfig", "ScoreReport"]
