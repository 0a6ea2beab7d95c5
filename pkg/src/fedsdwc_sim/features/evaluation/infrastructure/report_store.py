"""ScoreReport persistence: scores.json and a flat scores.csv."""

from pathlib import Path

import pandas as pd

from fedsdwc_sim.features.evaluation.domain.entities import ScoreReport
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError
from fedsdwc_sim.shared.infrastructure.serialization import read_json, write_json

SCORES_JSON = "scores.json"
SCORES_CSV = "scores.csv"


def write_score_report(report: ScoreReport, directory: Path) -> tuple[Path, Path]:
    """Write both formats and return their paths."""
    json_path = write_json(directory / SCORES_JSON, report.to_dict())
    csv_path = directory / SCORES_CSV
    frame = pd.DataFrame(report.rows(), columns=["metric", "key", "value", "num_examples"])
    frame.to_csv(csv_path, index=False, float_format="%.9g")
    return json_path, csv_path


def read_score_report(directory: Path) -> ScoreReport:
    """Load ``scores.json`` from a run directory."""
    path = directory / SCORES_JSON
    if not path.exists():
        raise ArtifactNotFoundError(str(directory), SCORES_JSON)
    return ScoreReport.from_dict(read_json(path))
