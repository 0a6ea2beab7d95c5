"""Full evaluation suite over named datasets."""

from collections.abc import Mapping

import numpy as np

from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.data.domain.enums import DistributionTag
from fedsdwc_sim.features.evaluation.application.metrics import (
    accuracy,
    auroc,
    fpr_at_tpr,
    msp_scores,
)
from fedsdwc_sim.features.evaluation.domain.entities import (
    DetectionScore,
    EvaluationConfig,
    ScoreReport,
)
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError

logger = get_logger(__name__)

ID_KEY = "id"


def _pick_id_set(datasets: Mapping[str, LabeledDataset]) -> str:
    id_names = [name for name, ds in datasets.items() if ds.tag is DistributionTag.ID]
    if not id_names:
        raise InvalidInputError("datasets", "at least one ID set is required")
    return ID_KEY if ID_KEY in id_names else id_names[0]


def evaluate_suite(
    params: ModelParams,
    datasets: Mapping[str, LabeledDataset],
    config: EvaluationConfig | None = None,
) -> ScoreReport:
    """Accuracy on the ID and ID-C sets, MSP-based AUROC/FPR95 on each ID-S set.

    ID-C entries are keyed by their dataset name; ID-S entries likewise.
    """
    config = config or EvaluationConfig()
    id_name = _pick_id_set(datasets)
    id_set = datasets[id_name]

    report = ScoreReport(id_acc=accuracy(params, id_set, config))
    report.num_eval_examples[ID_KEY] = len(id_set)

    id_scores = [msp_scores(params, id_set.features, config, stream=id_name)]
    for name, ds in sorted(datasets.items()):
        if name == id_name:
            continue
        if ds.tag is DistributionTag.ID_C:
            report.idc_acc[name] = accuracy(params, ds, config)
            report.num_eval_examples[name] = len(ds)
            if config.id_scores_include_idc:
                id_scores.append(msp_scores(params, ds.features, config, stream=name))

    positives = np.concatenate(id_scores)
    for name, ds in sorted(datasets.items()):
        if ds.tag is not DistributionTag.ID_S:
            continue
        negatives = msp_scores(params, ds.features, config, stream=name)
        report.detection[name] = DetectionScore(
            auroc=auroc(positives, negatives),
            fpr95=fpr_at_tpr(positives, negatives, config.tpr_target),
        )
        report.num_eval_examples[name] = len(ds)

    logger.info(
        "suite_evaluated",
        id_acc=report.id_acc,
        mean_idc_acc=report.mean_idc_acc,
        ood_sets=sorted(report.detection),
    )
    return report
