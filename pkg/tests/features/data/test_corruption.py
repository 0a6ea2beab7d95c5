import numpy as np
import pytest

from fedsdwc_sim.features.data.application import (
    apply_corruption,
    generate_scm_dataset,
    make_semantic_ood,
)
from fedsdwc_sim.features.data.domain import (
    CorruptionKind,
    DistributionTag,
    LabeledDataset,
    ScmSpec,
)
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError


@pytest.fixture
def clean() -> LabeledDataset:
    return generate_scm_dataset(ScmSpec(), 200, seed=9)


@pytest.mark.parametrize("severity", [0, 6])
def test_severity_outside_range_is_rejected(clean, severity):
    with pytest.raises(InvalidInputError):
        apply_corruption(clean, CorruptionKind.BRIGHTNESS, severity)


def test_gaussian_noise_has_configured_std():
    clean = generate_scm_dataset(ScmSpec(), 10_000, seed=1)
    noisy = apply_corruption(clean, "gaussian_noise", 1, seed=2)

    stds = (noisy.features - clean.features).std(axis=0)
    assert np.all((stds >= 0.035) & (stds <= 0.045))


@pytest.mark.parametrize("kind", list(CorruptionKind))
def test_labels_are_never_touched(clean, kind):
    corrupted = apply_corruption(clean, kind, 3, seed=0)

    assert np.array_equal(corrupted.labels, clean.labels)
    assert corrupted.tag is DistributionTag.ID_C
    assert corrupted.provenance["corruption"] == kind.value
    assert corrupted.provenance["severity"] == 3


def test_brightness_adds_a_constant(clean):
    brighter = apply_corruption(clean, CorruptionKind.BRIGHTNESS, 4)

    np.testing.assert_allclose(brighter.features - clean.features, 0.4)


def test_contrast_keeps_row_means(clean):
    flat = apply_corruption(clean, CorruptionKind.CONTRAST, 5)

    np.testing.assert_allclose(flat.features.mean(axis=1), clean.features.mean(axis=1))
    assert flat.features.std(axis=1).mean() < clean.features.std(axis=1).mean()


def test_blur_leaves_constant_rows_unchanged():
    ds = LabeledDataset(
        features=np.full((3, 10), 2.5), labels=np.zeros(3, dtype=np.int64), tag=DistributionTag.ID
    )

    blurred = apply_corruption(ds, CorruptionKind.BLUR, 2)

    np.testing.assert_allclose(blurred.features, 2.5)


def test_only_id_data_can_be_corrupted():
    ood = make_semantic_ood(ScmSpec(), 10)

    with pytest.raises(InvalidInputError):
        apply_corruption(ood, CorruptionKind.BLUR, 1)
