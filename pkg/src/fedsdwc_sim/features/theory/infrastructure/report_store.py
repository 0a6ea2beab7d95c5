"""BoundReport persistence."""

from pathlib import Path

import pandas as pd

from fedsdwc_sim.features.theory.domain.entities import BoundReport
from fedsdwc_sim.shared.infrastructure.serialization import write_json

BOUND_CSV = "bound_report.csv"
BOUND_JSON = "bound_report.json"
COLUMNS = ["sigma_mu", "lhs", "rhs", "mc_std_error", "check_a", "check_b"]


def bound_table(report: BoundReport) -> pd.DataFrame:
    return pd.DataFrame(report.table_rows(), columns=COLUMNS)


def write_bound_report(report: BoundReport, directory: Path) -> tuple[Path, Path]:
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / BOUND_CSV
    bound_table(report).to_csv(csv_path, index=False, float_format="%.9g")
    json_path = write_json(directory / BOUND_JSON, report.to_dict())
    return csv_path, json_path
