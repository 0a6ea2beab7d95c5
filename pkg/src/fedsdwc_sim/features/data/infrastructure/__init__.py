"""Data infrastructure: SCM mechanisms and dataset storage."""

from fedsdwc_sim.features.data.infrastructure.dataset_store import load_dataset, save_dataset
from fedsdwc_sim.features.data.infrastructure.mechanism import ScmMechanism, build_mechanism

__all__ = ["ScmMechanism", "build_mechanism", "load_dataset", "save_dataset"]
