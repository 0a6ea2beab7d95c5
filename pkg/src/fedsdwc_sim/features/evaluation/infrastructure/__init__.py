"""Evaluation infrastructure: report storage."""

from fedsdwc_sim.features.evaluation.infrastructure.report_store import (
    SCORES_CSV,
    SCORES_JSON,
    read_score_report,
    write_score_report,
)

__all__ = ["SCORES_CSV", "SCORES_JSON", "read_score_report", "write_score_report"]
