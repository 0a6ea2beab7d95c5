"""Data application module."""

from fedsdwc_sim.features.data.application.augmentation import draw_amplitude_mix, fourier_augment
from fedsdwc_sim.features.data.application.corruption import apply_corruption
from fedsdwc_sim.features.data.application.generation import (
    generate_scm_dataset,
    make_semantic_ood,
)
from fedsdwc_sim.features.data.application.partition import (
    class_histograms,
    dirichlet_partition,
    label_skew,
)

__all__ = [
    "apply_corruption",
    "class_histograms",
    "dirichlet_partition",
    "draw_amplitude_mix",
    "fourier_augment",
    "generate_scm_dataset",
    "label_skew",
    "make_semantic_ood",
]
