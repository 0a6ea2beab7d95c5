"""Analytic covariate-shift corruptions."""

import numpy as np
from scipy.ndimage import uniform_filter1d

from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.data.domain.enums import CorruptionKind, DistributionTag
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError

MIN_SEVERITY = 1
MAX_SEVERITY = 5


def apply_corruption(
    ds: LabeledDataset,
    kind: CorruptionKind | str,
    severity: int,
    seed: int = 0,
) -> LabeledDataset:
    """Corrupt the features of an ID dataset; labels are never touched.

    Args:
        ds: Clean in-distribution dataset.
        kind: One of gaussian_noise, brightness, contrast, blur.
        severity: Integer strength 1..5, mapped linearly to the transform.
        seed: Seed for the noise draw (only gaussian_noise is random).

    Returns:
        New ID-C dataset with the corruption recorded in its provenance.
    """
    kind = CorruptionKind(kind)
    if isinstance(severity, bool) or not MIN_SEVERITY <= int(severity) <= MAX_SEVERITY:
        raise InvalidInputError("severity", f"must be in {MIN_SEVERITY}..{MAX_SEVERITY}")
    if ds.tag is not DistributionTag.ID:
        raise InvalidInputError("ds.tag", "corruptions apply to ID datasets only")

    x = ds.features
    match kind:
        case CorruptionKind.GAUSSIAN_NOISE:
            rng = np.random.default_rng(seed)
            corrupted = x + 0.04 * severity * rng.standard_normal(x.shape)
        case CorruptionKind.BRIGHTNESS:
            corrupted = x + 0.1 * severity
        case CorruptionKind.CONTRAST:
            row_mean = x.mean(axis=1, keepdims=True)
            corrupted = row_mean + (1.0 - 0.1 * severity) * (x - row_mean)
        case CorruptionKind.BLUR:
            corrupted = uniform_filter1d(x, size=2 * severity + 1, axis=1, mode="nearest")

    return LabeledDataset(
        features=corrupted,
        labels=ds.labels.copy(),
        tag=DistributionTag.ID_C,
        provenance={
            **ds.provenance,
            "corruption": kind.value,
            "severity": int(severity),
            "corruption_seed": int(seed),
        },
    )
