import itertools

import numpy as np
import pytest
import torch

from fedsdwc_sim.features.data.application import generate_scm_dataset, make_semantic_ood
from fedsdwc_sim.features.data.domain import LabeledDataset
from fedsdwc_sim.features.evaluation.application import (
    accuracy,
    auroc,
    fpr_at_tpr,
    msp_score,
    msp_scores,
)
from fedsdwc_sim.features.evaluation.domain import EvaluationConfig
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError

GRID = (0.0, 0.5, 1.0)


def _pairwise_auroc(id_scores, ood_scores) -> float:
    credit = 0.0
    for a in id_scores:
        for b in ood_scores:
            credit += 1.0 if a > b else 0.5 if a == b else 0.0
    return credit / (len(id_scores) * len(ood_scores))


def _sweep_fpr(id_scores, ood_scores, tpr_target: float = 0.95) -> float:
    id_arr, ood_arr = np.asarray(id_scores), np.asarray(ood_scores)
    admissible = [
        t for t in np.concatenate([id_arr, ood_arr]) if np.mean(id_arr >= t) >= tpr_target
    ]
    threshold = max(admissible)
    return float(np.mean(ood_arr >= threshold))


def _small_splits():
    for length in range(2, 9):
        for values in itertools.product(GRID, repeat=length):
            for cut in range(1, length):
                yield values[:cut], values[cut:]


def _zero_classifier(params, logit_bias: torch.Tensor | None = None):
    for name in params.names():
        if name.startswith("classifier."):
            params.arrays[name] = torch.zeros_like(params[name])
    if logit_bias is not None:
        params.arrays["classifier.2.bias"] = logit_bias.to(params.dtype)
    return params


@pytest.mark.parametrize(
    ("id_scores", "ood_scores", "expected"),
    [
        ([0.9, 0.8], [0.1, 0.2], 1.0),
        ([0.5, 0.5], [0.5, 0.5], 0.5),
        ([0.9, 0.3], [0.5, 0.1], 0.75),
    ],
)
def test_auroc_examples(id_scores, ood_scores, expected):
    assert auroc(id_scores, ood_scores) == expected


def test_auroc_matches_pairwise_counting_on_small_grids():
    for id_scores, ood_scores in _small_splits():
        assert auroc(id_scores, ood_scores) == _pairwise_auroc(id_scores, ood_scores)


def test_fpr_matches_threshold_sweep_on_small_grids():
    for id_scores, ood_scores in _small_splits():
        assert fpr_at_tpr(id_scores, ood_scores) == _sweep_fpr(id_scores, ood_scores)


def test_metrics_match_oracles_on_random_vectors():
    rng = np.random.default_rng(0)
    for _ in range(50):
        id_scores = rng.random(100)
        ood_scores = rng.random(100) * 0.8
        assert auroc(id_scores, ood_scores) == pytest.approx(
            _pairwise_auroc(id_scores, ood_scores), abs=1e-12
        )
        assert fpr_at_tpr(id_scores, ood_scores) == _sweep_fpr(id_scores, ood_scores)


def test_fpr_on_repeated_id_scores_matches_sweep():
    id_scores = np.tile([0.9, 0.8, 0.7, 0.6, 0.5], 20)
    ood_scores = np.random.default_rng(4).random(100)

    assert fpr_at_tpr(id_scores, ood_scores) == _sweep_fpr(id_scores, ood_scores)


def test_fpr_is_zero_for_separated_scores():
    assert fpr_at_tpr([0.8, 0.9, 0.95], [0.1, 0.5, 0.7]) == 0.0


def test_fpr_on_identical_multisets():
    scores = np.random.default_rng(1).random(40)

    assert fpr_at_tpr(scores, scores) >= 0.95 - 1.0 / 40


def test_auroc_is_antisymmetric():
    rng = np.random.default_rng(2)
    a = rng.integers(0, 5, size=30) / 4.0
    b = rng.integers(0, 5, size=25) / 4.0

    assert auroc(a, b) + auroc(b, a) == pytest.approx(1.0, abs=1e-15)


def test_metrics_are_invariant_to_increasing_transforms():
    rng = np.random.default_rng(3)
    a, b = rng.random(50), rng.random(60)

    assert auroc(np.exp(3 * a), np.exp(3 * b)) == auroc(a, b)
    assert fpr_at_tpr(a**3, b**3) == fpr_at_tpr(a, b)


@pytest.mark.parametrize(
    ("id_scores", "ood_scores"), [([], [0.1]), ([0.1], []), (np.array([]), np.array([]))]
)
def test_empty_scores_are_rejected(id_scores, ood_scores):
    with pytest.raises(InvalidInputError):
        auroc(id_scores, ood_scores)
    with pytest.raises(InvalidInputError):
        fpr_at_tpr(id_scores, ood_scores)


@pytest.mark.parametrize("target", [0.0, -0.1, 1.5])
def test_tpr_target_must_be_a_rate(target):
    with pytest.raises(InvalidInputError):
        fpr_at_tpr([0.5], [0.5], target)


def test_uniform_predictive_gives_inverse_class_count(make_params):
    params = _zero_classifier(make_params(num_classes=10))

    assert msp_score(params, np.zeros(8)) == pytest.approx(0.1, abs=1e-12)


def test_large_logit_margin_saturates_the_score(make_params):
    bias = torch.tensor([20.0, 0.0, 0.0])
    params = _zero_classifier(make_params(seed=1), logit_bias=bias)

    assert msp_score(params, np.ones(8)) >= 0.999


def test_scores_lie_between_uniform_and_one(make_params):
    params = make_params(seed=2)
    features = np.random.default_rng(5).standard_normal((100, 8))

    scores = msp_scores(params, features)

    assert scores.shape == (100,)
    assert np.all(scores <= 1.0)
    assert np.all(scores >= 1.0 / 3.0 - 1e-12)


def test_monte_carlo_scores_are_seeded(make_params):
    params = make_params(seed=2, mc_samples=4)
    features = np.random.default_rng(6).standard_normal((20, 8))
    config = EvaluationConfig(monte_carlo=True, mc_seed=9, batch_size=7)

    first = msp_scores(params, features, config)
    second = msp_scores(params, features, config)

    assert np.array_equal(first, second)
    assert not np.array_equal(first, msp_scores(params, features))


def test_accuracy_is_unchanged_by_duplicating_the_data(make_params, scm_spec):
    params = make_params(seed=4)
    ds = generate_scm_dataset(scm_spec, 50, seed=2)
    doubled = LabeledDataset(
        features=np.concatenate([ds.features, ds.features]),
        labels=np.concatenate([ds.labels, ds.labels]),
        tag=ds.tag,
    )

    assert accuracy(params, doubled) == accuracy(params, ds)
    assert 0.0 <= accuracy(params, ds) <= 1.0


def test_accuracy_rejects_semantic_shift_sets(make_params, scm_spec):
    with pytest.raises(InvalidInputError):
        accuracy(make_params(), make_semantic_ood(scm_spec, 10, seed=0))
