"""Directional check of the three causal modes on the shipped ablation sweep.

Run with ``pytest -m slow``; the sweep trains 15 federations.
"""

from pathlib import Path

import pandas as pd
import pytest

from fedsdwc_sim.features.experiments.application import apply_overrides, run_experiment
from fedsdwc_sim.features.experiments.infrastructure import SWEEP_SUMMARY, load_config

ABLATION = Path(__file__).resolve().parents[3] / "configs" / "ablation.config"
AUROC = "semantic/auroc"


def _per_seed(summary: pd.DataFrame) -> pd.DataFrame:
    parts = summary["run"].str.split("/", n=1)
    return summary.assign(arm=parts.str[0], seed=parts.str[1]).pivot(
        index="seed", columns="arm", values=["mean_idc_acc", AUROC]
    )


@pytest.mark.slow
def test_weak_link_beats_the_other_modes_on_average(tmp_path):
    config = apply_overrides(load_config(ABLATION), {"out": tmp_path})
    run_experiment(config)

    summary = pd.read_csv(tmp_path / SWEEP_SUMMARY)
    table = _per_seed(summary)
    print(table.to_string(float_format="%.4f"))

    assert set(table["mean_idc_acc"].columns) == {"none", "strong", "weak"}
    assert len(table) == 5
    means = table.mean()
    best_other_acc = max(means[("mean_idc_acc", "none")], means[("mean_idc_acc", "strong")])
    best_other_auroc = max(means[(AUROC, "none")], means[(AUROC, "strong")])
    assert means[("mean_idc_acc", "weak")] >= best_other_acc + 0.02, table
    assert means[(AUROC, "weak")] >= best_other_auroc - 0.01, table
