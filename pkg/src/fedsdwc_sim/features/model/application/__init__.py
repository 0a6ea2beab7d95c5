"""Model application module."""

from fedsdwc_sim.features.model.application.network import (
    classify,
    component_shapes,
    decode,
    infer_latents,
    init_params,
    predict,
    predict_deterministic,
    predictive_draws,
    prior_s,
    split_features,
)

__all__ = [
    "classify",
    "component_shapes",
    "decode",
    "infer_latents",
    "init_params",
    "predict",
    "predict_deterministic",
    "predictive_draws",
    "prior_s",
    "split_features",
]
