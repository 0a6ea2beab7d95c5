"""Data domain enums."""

from enum import Enum


class DistributionTag(str, Enum):
    """Which data regime a dataset belongs to."""

    ID = "ID"
    ID_C = "ID-C"  # covariate shift
    ID_S = "ID-S"  # semantic shift


class CorruptionKind(str, Enum):
    """Analytic covariate-shift transforms."""

    GAUSSIAN_NOISE = "gaussian_noise"
    BRIGHTNESS = "brightness"
    CONTRAST = "contrast"
    BLUR = "blur"
