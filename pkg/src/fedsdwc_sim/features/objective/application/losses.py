"""ELBO, interventional consistency and total losses."""

import torch

from fedsdwc_sim.features.model.application.network import (
    classify,
    decode,
    infer_latents,
    predictive_draws,
    prior_s,
    split_features,
)
from fedsdwc_sim.features.model.domain.entities import ModelParams
from fedsdwc_sim.features.model.domain.enums import CausalMode
from fedsdwc_sim.features.objective.domain.entities import (
    LossBreakdown,
    ObjectiveConfig,
    ObjectiveNoise,
)
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError, NumericError

# order in which non-finite terms are reported
_TERMS = ("ce", "recon_x", "recon_xs", "recon_xz", "kl_s", "kl_z", "kl_c", "elbo_weighted")


def _normal_kl_rows(
    mean_a: torch.Tensor, std_a: torch.Tensor, mean_b: torch.Tensor, std_b: torch.Tensor
) -> torch.Tensor:
    p = torch.distributions.Normal(mean_a, std_a)
    q = torch.distributions.Normal(mean_b, std_b)
    return torch.distributions.kl_divergence(p, q).sum(-1)


def gaussian_kl(
    mean_a: torch.Tensor, std_a: torch.Tensor, mean_b: torch.Tensor, std_b: torch.Tensor
) -> torch.Tensor:
    """KL(N(mean_a, std_a^2) || N(mean_b, std_b^2)) summed over coordinates."""
    tensors = [torch.as_tensor(t, dtype=torch.float64) for t in (mean_a, std_a, mean_b, std_b)]
    mean_a, std_a, mean_b, std_b = torch.broadcast_tensors(*tensors)
    if bool((std_a <= 0).any()) or bool((std_b <= 0).any()):
        raise InvalidInputError("std", "standard deviations must be strictly positive")
    return _normal_kl_rows(mean_a, std_a, mean_b, std_b).sum()


def _check_batch(params: ModelParams, features: torch.Tensor, labels: torch.Tensor) -> None:
    if features.shape[0] == 0:
        raise InvalidInputError("batch", "must be nonempty")
    if labels.shape != (features.shape[0],):
        raise InvalidInputError("labels", "length must equal the batch size")
    num_classes = params.config.num_classes
    if bool((labels < 0).any()) or bool((labels >= num_classes).any()):
        raise InvalidInputError("labels", f"values must lie in [0, {num_classes})")


def elbo_terms(
    params: ModelParams,
    features: torch.Tensor,
    labels: torch.Tensor,
    noise: ObjectiveNoise,
    config: ObjectiveConfig,
) -> dict[str, torch.Tensor]:
    """Per-example ELBO terms (each a vector of length n).

    The weighted term is ``-w * bracket`` with ``w = clip(1 / q(y|x), 0, weight_clip)``
    detached, and ``bracket = log p(y|c,x_s) + log p(x|.) + log p(x_s|s) + log p(x_z|z)
    - KL_s - KL_z - KL_c`` from one latent draw.
    """
    labels = torch.as_tensor(labels, dtype=torch.long)
    _check_batch(params, features, labels)
    model_config = params.config
    x = features.to(params.dtype)
    x_s, x_z = split_features(params, x)
    index = labels.unsqueeze(1)

    q_y = predictive_draws(params, x_s, x_z, noise.predictive).mean(dim=0)
    q_true = q_y.gather(1, index).squeeze(1).clamp_min(config.prob_floor)
    ce = -torch.log(q_true)

    latents = infer_latents(params, x_s, x_z, noise.latent)
    p_true = classify(params, latents.c, x_s).gather(1, index).squeeze(1)
    log_py = torch.log(p_true.clamp_min(config.prob_floor))

    decoded = decode(params, latents.s, latents.z)
    recon_x = -decoded.log_px(x)
    recon_xs = -decoded.log_px_s(x_s)
    recon_xz = -decoded.log_px_z(x_z)

    # z and c are drawn after s, so the s term is a single-sample estimate
    prior_mean, prior_std = prior_s(params, latents.z, latents.c)
    prior_density = torch.distributions.Normal(prior_mean, prior_std)
    kl_s = latents.heads["s"].log_prob(latents.s) - prior_density.log_prob(latents.s).sum(-1)

    divergences: dict[str, torch.Tensor] = {}
    for head in ("z", "c"):
        value = getattr(latents, head)
        if model_config.mixture_components == 1:
            mean, std = latents.selected_means[head], latents.selected_stds[head]
            divergences[head] = _normal_kl_rows(
                mean, std, torch.zeros_like(mean), torch.ones_like(std)
            )
        else:
            standard = torch.distributions.Normal(torch.zeros_like(value), torch.ones_like(value))
            divergences[head] = latents.heads[head].log_prob(value) - standard.log_prob(
                value
            ).sum(-1)

    bracket = log_py - recon_x - recon_xs - recon_xz - kl_s - divergences["z"] - divergences["c"]
    weight = (1.0 / q_true).clamp(0.0, config.weight_clip).detach()

    return {
        "ce": ce,
        "recon_x": recon_x,
        "recon_xs": recon_xs,
        "recon_xz": recon_xz,
        "kl_s": kl_s,
        "kl_z": divergences["z"],
        "kl_c": divergences["c"],
        "elbo_weighted": -weight * bracket,
    }


def _mean_terms(terms: dict[str, torch.Tensor]) -> dict[str, torch.Tensor]:
    means = {name: terms[name].mean() for name in _TERMS}
    for name in _TERMS:
        if not bool(torch.isfinite(means[name])):
            raise NumericError(name)
    return means


def elbo_loss(
    params: ModelParams,
    features: torch.Tensor,
    labels: torch.Tensor,
    noise: ObjectiveNoise,
    config: ObjectiveConfig,
) -> LossBreakdown:
    """Cross-entropy plus importance-weighted negative ELBO, averaged over the batch."""
    means = _mean_terms(elbo_terms(params, features, labels, noise, config))
    zero = torch.zeros((), dtype=params.dtype)
    return LossBreakdown(
        **means,
        ic=zero,
        total=means["ce"] + means["elbo_weighted"],
    )


def intervention_loss(
    params: ModelParams,
    features: torch.Tensor,
    intervention_scale: float,
    noise: ObjectiveNoise,
    config: ObjectiveConfig,
) -> torch.Tensor:
    """Mean KL between predictive distributions before and after perturbing x_z.

    Both passes share the predictive reparameterization noise; the perturbation
    is ``x_z + intervention_scale * noise.intervention``.
    """
    if intervention_scale < 0:
        raise InvalidInputError("intervention_scale", "must be >= 0")
    x_s, x_z = split_features(params, features.to(params.dtype))
    clean = predictive_draws(params, x_s, x_z, noise.predictive).mean(dim=0)
    if config.detach_clean:
        clean = clean.detach()
    shifted_z = x_z + intervention_scale * noise.intervention.to(params.dtype)
    perturbed = predictive_draws(params, x_s, shifted_z, noise.predictive).mean(dim=0)

    p = clean.clamp_min(config.prob_floor)
    q = perturbed.clamp_min(config.prob_floor)
    divergence = (p * (torch.log(p) - torch.log(q))).sum(dim=-1).mean()
    if not bool(torch.isfinite(divergence)):
        raise NumericError("ic")
    return divergence.clamp_min(0.0)


def total_loss(
    params: ModelParams,
    features: torch.Tensor,
    labels: torch.Tensor,
    config: ObjectiveConfig,
    intervention_scale: float,
    noise: ObjectiveNoise,
    raw_features: torch.Tensor | None = None,
) -> LossBreakdown:
    """ELBO loss plus the intervention loss in weak mode.

    ``raw_features`` are the pre-augmentation inputs; they feed the intervention
    term only when ``config.ic_on_augmented`` is false.
    """
    breakdown = elbo_loss(params, features, labels, noise, config)
    if params.config.causal_mode is not CausalMode.WEAK:
        return breakdown
    ic_input = features
    if raw_features is not None and not config.ic_on_augmented:
        ic_input = raw_features
    ic = intervention_loss(params, ic_input, intervention_scale, noise, config)
    breakdown.ic = ic
    breakdown.total = breakdown.ce + breakdown.elbo_weighted + ic
    return breakdown
