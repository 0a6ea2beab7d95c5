"""Tables assembled from run directories."""

from collections.abc import Sequence
from pathlib import Path
from typing import Any

import pandas as pd

from fedsdwc_sim.features.data.application import class_histograms, label_skew
from fedsdwc_sim.features.data.domain.entities import PartitionSpec
from fedsdwc_sim.features.data.infrastructure import load_dataset
from fedsdwc_sim.features.evaluation.infrastructure import read_score_report
from fedsdwc_sim.features.experiments.infrastructure.run_layout import (
    PARTITION_FILE,
    TRAIN_DATA_DIR,
)
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError, InvalidInputError
from fedsdwc_sim.shared.infrastructure.serialization import read_json

logger = get_logger(__name__)


def compare_runs(
    run_dirs: Sequence[Path],
    labels: Sequence[str] | None = None,
    csv_path: Path | None = None,
) -> pd.DataFrame:
    """One row per run: ID accuracy, mean ID-C accuracy and per-OOD-set detection.

    Rows are labelled with the directory name unless ``labels`` is given.
    """
    if labels is not None and len(labels) != len(run_dirs):
        raise InvalidInputError("labels", "need one label per run directory")
    rows: list[dict[str, Any]] = []
    for index, run_dir in enumerate(run_dirs):
        report = read_score_report(run_dir)
        row: dict[str, Any] = {
            "run": labels[index] if labels is not None else run_dir.name,
            "id_acc": report.id_acc,
            "mean_idc_acc": report.mean_idc_acc,
        }
        for name, score in sorted(report.detection.items()):
            row[f"{name}/auroc"] = score.auroc
            row[f"{name}/fpr95"] = score.fpr95
        rows.append(row)

    table = pd.DataFrame(rows)
    if csv_path is not None:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(csv_path, index=False, float_format="%.9g")
        logger.info("artifact_written", path=str(csv_path), rows=len(table))
    return table


def partition_stats(run_dir: Path, csv_path: Path | None = None) -> pd.DataFrame:
    """Per-client class histogram, size and label-skew TV distance of a stored run."""
    partition_file = run_dir / PARTITION_FILE
    if not partition_file.is_file():
        raise ArtifactNotFoundError(str(run_dir), PARTITION_FILE)
    partition = PartitionSpec.from_dict(read_json(partition_file))
    train = load_dataset(run_dir / TRAIN_DATA_DIR)

    histograms = class_histograms(train.labels, partition)
    table = pd.DataFrame(
        histograms, columns=[f"class_{j}" for j in range(histograms.shape[1])]
    )
    table.insert(0, "client", range(partition.num_clients))
    table["num_examples"] = histograms.sum(axis=1)
    table["weight"] = partition.client_weights
    table["tv_distance"] = label_skew(train.labels, partition)
    if csv_path is not None:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(csv_path, index=False, float_format="%.9g")
    return table
