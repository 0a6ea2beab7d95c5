"""End-to-end runs: data, federated training, evaluation and the bound check."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fedsdwc_sim.features.data.application import (
    apply_corruption,
    dirichlet_partition,
    generate_scm_dataset,
    make_semantic_ood,
)
from fedsdwc_sim.features.data.domain.entities import LabeledDataset
from fedsdwc_sim.features.data.infrastructure import save_dataset
from fedsdwc_sim.features.evaluation.application import accuracy, evaluate_suite
from fedsdwc_sim.features.evaluation.domain.entities import ScoreReport
from fedsdwc_sim.features.evaluation.infrastructure import write_score_report
from fedsdwc_sim.features.experiments.application.comparison import compare_runs
from fedsdwc_sim.features.experiments.application.configuration import (
    apply_arm,
    resolve_config,
)
from fedsdwc_sim.features.experiments.domain.entities import ExperimentConfig, SweepArm
from fedsdwc_sim.features.experiments.infrastructure.config_store import write_resolved_config
from fedsdwc_sim.features.experiments.infrastructure.run_layout import (
    CHECKPOINT_DIR,
    PARTITION_FILE,
    SWEEP_SUMMARY,
    TRAIN_DATA_DIR,
    TRAINING_LOG,
)
from fedsdwc_sim.features.federation.application.use_cases import EvalHook, run_federation
from fedsdwc_sim.features.federation.infrastructure.executor_factory import get_client_executor
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.features.model.infrastructure import save_checkpoint
from fedsdwc_sim.features.theory.application import verify_bound
from fedsdwc_sim.features.theory.domain.entities import BoundReport, InstanceFamily, TheoryConfig
from fedsdwc_sim.features.theory.infrastructure import write_bound_report
from fedsdwc_sim.shared.core.logging import get_logger
from fedsdwc_sim.shared.core.seeding import derive_seed
from fedsdwc_sim.shared.domain.exceptions import ConfigurationError, SimulationError
from fedsdwc_sim.shared.infrastructure.serialization import NdjsonWriter, write_json

logger = get_logger(__name__)

ID_SET = "id"
SEMANTIC_SET = "semantic"


@dataclass
class ExperimentResult:
    """Run directories written by one invocation and their scores."""

    out: Path
    runs: dict[str, ScoreReport] = field(default_factory=dict)
    bound_report: BoundReport | None = None


def build_training_set(config: ExperimentConfig) -> LabeledDataset:
    return generate_scm_dataset(
        config.data.scm, config.data.num_train, seed=derive_seed(config.seed, "data", "train")
    )


def build_evaluation_sets(config: ExperimentConfig) -> dict[str, LabeledDataset]:
    """Clean ID test set, its corrupted copies, style-shifted sets and the unseen-class set."""
    scm, evaluation = config.data.scm, config.evaluation
    clean = generate_scm_dataset(
        scm, evaluation.num_test, seed=derive_seed(config.seed, "data", "test")
    )
    sets = {ID_SET: clean}
    for setting in evaluation.corruptions:
        sets[setting.key] = apply_corruption(
            clean,
            setting.kind,
            setting.severity,
            seed=derive_seed(config.seed, "corruption", setting.key),
        )
    for shift in evaluation.style_shifts:
        key = f"style:{shift:g}"
        sets[key] = generate_scm_dataset(
            scm,
            evaluation.num_test,
            env_shift=np.full(scm.dim_z, shift),
            seed=derive_seed(config.seed, "style", key),
        )
    sets[SEMANTIC_SET] = make_semantic_ood(
        scm, evaluation.num_ood, seed=derive_seed(config.seed, "data", "ood")
    )
    return sets


def _round_hooks(
    config: ExperimentConfig, eval_sets: Mapping[str, LabeledDataset]
) -> list[EvalHook]:
    if not config.evaluation.track_rounds:
        return []
    clean = eval_sets[ID_SET]

    def id_accuracy(round_index: int, params: ModelParams) -> dict[str, float]:
        return {"id_acc": accuracy(params, clean, config.evaluation)}

    return [id_accuracy]


def run_single(config: ExperimentConfig) -> ScoreReport:
    """One resolved run; every artifact goes under ``config.out``.

    Round records are flushed as they complete so a failing run keeps its
    partial training log.
    """
    if config.out is None:
        raise ConfigurationError("out", "run directory must be resolved before running")
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    write_resolved_config(config, out)
    log = logger.bind(run=str(out), arm=config.arm, seed=config.seed)

    train = build_training_set(config)
    save_dataset(train, out / TRAIN_DATA_DIR)
    partition = dirichlet_partition(
        train.labels,
        config.federation.num_clients,
        config.data.concentration,
        seed=derive_seed(config.seed, "partition"),
    )
    write_json(out / PARTITION_FILE, partition.to_dict())
    eval_sets = build_evaluation_sets(config)
    log.info("datasets_ready", train=len(train), eval_sets=len(eval_sets))

    with NdjsonWriter(out / TRAINING_LOG) as writer:
        training = run_federation(
            config.federation,
            config.model,
            partition,
            train,
            executor=get_client_executor(),
            eval_hooks=_round_hooks(config, eval_sets),
            objective=config.objective,
            on_round=lambda record: writer.write(record.to_dict()),
        )
    if training.final_params is None:
        raise SimulationError("federated training returned no final parameters")
    save_checkpoint(training.final_params, out / CHECKPOINT_DIR)

    report = evaluate_suite(training.final_params, eval_sets, config.evaluation)
    write_score_report(report, out)
    log.info("run_complete", id_acc=report.id_acc, mean_idc_acc=report.mean_idc_acc)
    return report


def run_bound_verification(theory: TheoryConfig, seed: int, out: Path) -> BoundReport:
    report = verify_bound(
        InstanceFamily.from_config(theory),
        theory.sigma_grid,
        theory.prior_gap,
        theory.num_x,
        derive_seed(seed, "theory"),
        chunk_size=theory.chunk_size,
    )
    write_bound_report(report, out)
    return report


def _sweep_cells(config: ExperimentConfig, out: Path) -> list[tuple[str, ExperimentConfig]]:
    arms = config.sweep.arms or [SweepArm(name="base")]
    seeds = config.sweep.seeds or [config.seed]
    cells = []
    for arm in arms:
        for seed in seeds:
            label = arm.name if len(seeds) == 1 else f"{arm.name}/seed-{seed}"
            cells.append((label, resolve_config(apply_arm(config, arm, seed, out / label))))
    return cells


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run a single experiment or every cell of its sweep.

    A sweep writes ``<out>/<arm>`` (``<out>/<arm>/seed-<s>`` with several
    seeds) and ``sweep_summary.csv``; the bound check, when enabled, writes
    its report at ``<out>``.
    """
    resolved = resolve_config(config)
    if resolved.out is None:
        raise ConfigurationError("out", "no output directory configured")
    result = ExperimentResult(out=resolved.out)

    if resolved.sweep.enabled:
        resolved.out.mkdir(parents=True, exist_ok=True)
        write_resolved_config(resolved, resolved.out)
        cells = _sweep_cells(resolved, resolved.out)
        for label, cell in cells:
            result.runs[label] = run_single(cell)
        compare_runs(
            [resolved.out / label for label, _ in cells],
            labels=[label for label, _ in cells],
            csv_path=resolved.out / SWEEP_SUMMARY,
        )
    else:
        result.runs[resolved.arm or resolved.out.name] = run_single(resolved)

    if resolved.theory.enabled:
        result.bound_report = run_bound_verification(resolved.theory, resolved.seed, resolved.out)
    return result
