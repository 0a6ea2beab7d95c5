"""Evaluation application module."""

from fedsdwc_sim.features.evaluation.application.metrics import (
    accuracy,
    auroc,
    fpr_at_tpr,
    msp_score,
    msp_scores,
    predict_dataset,
)
from fedsdwc_sim.features.evaluation.application.suite import evaluate_suite

__all__ = [
    "accuracy",
    "auroc",
    "evaluate_suite",
    "fpr_at_tpr",
    "msp_score",
    "msp_scores",
    "predict_dataset",
]
