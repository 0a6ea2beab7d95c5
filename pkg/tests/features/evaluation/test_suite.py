import json

import numpy as np
import pandas as pd
import pytest

from fedsdwc_sim.features.data.application import (
    apply_corruption,
    generate_scm_dataset,
    make_semantic_ood,
)
from fedsdwc_sim.features.evaluation.application import auroc, evaluate_suite, msp_scores
from fedsdwc_sim.features.evaluation.domain import EvaluationConfig, ScoreReport
from fedsdwc_sim.features.evaluation.infrastructure import (
    SCORES_CSV,
    SCORES_JSON,
    read_score_report,
    write_score_report,
)
from fedsdwc_sim.shared.domain.exceptions import ArtifactNotFoundError, InvalidInputError


def _suite(scm_spec):
    clean = generate_scm_dataset(scm_spec, 60, seed=1)
    return {
        "id": clean,
        "gaussian_noise:3": apply_corruption(clean, "gaussian_noise", 3, seed=2),
        "style:2": generate_scm_dataset(scm_spec, 60, env_shift=[2.0, 2.0], seed=3),
        "semantic": make_semantic_ood(scm_spec, 40, seed=4),
    }


def test_id_only_collection_has_no_shift_entries(make_params, scm_spec):
    report = evaluate_suite(make_params(seed=1), {"id": generate_scm_dataset(scm_spec, 30)})

    assert report.idc_acc == {}
    assert report.detection == {}
    assert report.mean_idc_acc is None
    assert report.num_eval_examples == {"id": 30}


def test_full_suite_fills_every_entry_within_range(make_params, scm_spec):
    report = evaluate_suite(make_params(seed=1), _suite(scm_spec))

    assert set(report.idc_acc) == {"gaussian_noise:3", "style:2"}
    assert set(report.detection) == {"semantic"}
    values = [report.id_acc, *report.idc_acc.values()]
    values += [v for score in report.detection.values() for v in score.to_dict().values()]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert report.num_eval_examples["semantic"] == 40


def test_recomputing_the_suite_is_exact(make_params, scm_spec):
    params, datasets = make_params(seed=2), _suite(scm_spec)

    assert evaluate_suite(params, datasets).to_dict() == evaluate_suite(params, datasets).to_dict()


def test_detection_uses_clean_id_scores_by_default(make_params, scm_spec):
    params, datasets = make_params(seed=3), _suite(scm_spec)

    report = evaluate_suite(params, datasets)

    id_scores = msp_scores(params, datasets["id"].features)
    expected = auroc(id_scores, msp_scores(params, datasets["semantic"].features))
    assert report.detection["semantic"].auroc == expected


def test_covariate_scores_can_join_the_id_pool(make_params, scm_spec):
    params, datasets = make_params(seed=3), _suite(scm_spec)
    config = EvaluationConfig(id_scores_include_idc=True)

    report = evaluate_suite(params, datasets, config)

    positives = np.concatenate(
        [
            msp_scores(params, datasets[name].features)
            for name in ("id", "gaussian_noise:3", "style:2")
        ]
    )
    negatives = msp_scores(params, datasets["semantic"].features)
    assert report.detection["semantic"].auroc == pytest.approx(auroc(positives, negatives))


def test_missing_id_set_is_rejected(make_params, scm_spec):
    with pytest.raises(InvalidInputError):
        evaluate_suite(make_params(), {"semantic": make_semantic_ood(scm_spec, 10)})


def test_report_is_written_as_json_and_flat_csv(tmp_path, make_params, scm_spec):
    report = evaluate_suite(make_params(seed=5), _suite(scm_spec))

    write_score_report(report, tmp_path)

    assert json.loads((tmp_path / SCORES_JSON).read_text())["id_acc"] == pytest.approx(
        report.id_acc, abs=1e-9
    )
    frame = pd.read_csv(tmp_path / SCORES_CSV)
    assert list(frame.columns) == ["metric", "key", "value", "num_examples"]
    assert frame["metric"].tolist() == ["id_acc", "idc_acc", "idc_acc", "auroc", "fpr95"]
    reloaded = read_score_report(tmp_path)
    assert reloaded.detection["semantic"].auroc == pytest.approx(
        report.detection["semantic"].auroc, abs=1e-9
    )


def test_reading_a_missing_report_fails(tmp_path):
    with pytest.raises(ArtifactNotFoundError):
        read_score_report(tmp_path)


def test_mean_covariate_accuracy_is_unweighted():
    report = ScoreReport(id_acc=0.9, idc_acc={"a": 0.5, "b": 0.7})

    assert report.mean_idc_acc == pytest.approx(0.6)


@pytest.mark.parametrize("shift", [0.0, float("inf")])
def test_degenerate_style_shifts_are_rejected(shift):
    with pytest.raises(ValueError):
        EvaluationConfig(style_shifts=[shift])
