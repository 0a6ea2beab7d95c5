"""On-disk dataset format: features.f32, labels.i64 and meta.json."""

from pathlib import Path

import numpy as np

from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.data.domain.enums import DistributionTag
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError
from fedsdwc_sim.shared.infrastructure.serialization import read_json, write_json

FEATURES_FILE = "features.f32"
LABELS_FILE = "labels.i64"
META_FILE = "meta.json"


def save_dataset(ds: LabeledDataset, directory: Path) -> Path:
    """Write ``ds`` as little-endian float32 features and int64 labels."""
    directory.mkdir(parents=True, exist_ok=True)
    ds.features.astype("<f4").tofile(directory / FEATURES_FILE)
    ds.labels.astype("<i8").tofile(directory / LABELS_FILE)
    write_json(directory / META_FILE, ds.to_dict())
    return directory


def load_dataset(directory: Path) -> LabeledDataset:
    """Read a dataset directory written by :func:`save_dataset`."""
    meta_path = directory / META_FILE
    if not meta_path.exists():
        raise ArtifactNotFoundError(str(directory), META_FILE)
    meta = read_json(meta_path)
    n, dim_x = int(meta["num_examples"]), int(meta["dim_x"])
    features = np.fromfile(directory / FEATURES_FILE, dtype="<f4").reshape(n, dim_x)
    labels = np.fromfile(directory / LABELS_FILE, dtype="<i8")
    return LabeledDataset(
        features=features.astype(np.float64),
        labels=labels.astype(np.int64),
        tag=DistributionTag(meta["tag"]),
        provenance=dict(meta["provenance"]),
    )
