"""File names inside a run directory."""

from pathlib import Path

TRAINING_LOG = "training_log.ndjson"
PARTITION_FILE = "partition.json"
SWEEP_SUMMARY = "sweep_summary.csv"
CHECKPOINT_DIR = "checkpoint"
TRAIN_DATA_DIR = Path("data") / "train"
