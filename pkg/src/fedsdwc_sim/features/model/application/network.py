"""Functional forward passes of the FedSDWC network.

Every function is a pure map of ``(params, inputs, explicit noise)``; nothing
draws random numbers internally. Inputs carry a leading batch axis.
"""

import math

import torch
import torch.nn.functional as F

from fedsdwc_sim.features.model.domain.entities import (
    STD_FLOOR,
    DecodedOutputs,
    LatentNoise,
    LatentSample,
    MixtureHead,
    ModelConfig,
    ModelParams,
)
from fedsdwc_sim.features.model.domain.enums import Activation
from fedsdwc_sim.shared.core.seeding import torch_generator
from fedsdwc_sim.shared.domain.exceptions import NumericError, ShapeMismatchError

NUM_LAYERS = 3
DISTRIBUTION_HEADS = frozenset({"head_s", "head_z", "head_c", "prior_s"})


def component_shapes(config: ModelConfig) -> dict[str, tuple[int, int]]:
    """(input, output) width of every component MLP."""
    w = config.split_width
    k = config.mixture_components
    style = config.dim_z if config.causal_mode.links_style else 0
    return {
        "splitter": (config.dim_x, 2 * w),
        "head_s": (w, k * (1 + 2 * config.dim_s)),
        "head_z": (w + config.dim_s, k * (1 + 2 * config.dim_z)),
        "head_c": (config.dim_s + style, k * (1 + 2 * config.dim_c)),
        "prior_s": (style + config.dim_c, 2 * config.dim_s),
        "dec_xs": (config.dim_s, w),
        "dec_xz": (config.dim_z, w),
        "dec_x": (2 * w, config.dim_x),
        "classifier": (config.dim_c + w, config.num_classes),
    }


def init_params(config: ModelConfig, seed: int = 0) -> ModelParams:
    """He-style initialization: weights ~ Normal(0, 2 / fan_in), zero biases.

    The output layer of each distribution head is further scaled by
    ``config.head_init_scale`` so every head starts near mean 0 and
    std ``softplus(0)``.
    """
    generator = torch_generator(seed)
    arrays: dict[str, torch.Tensor] = {}
    for component, (fan_in, fan_out) in component_shapes(config).items():
        widths = [fan_in, config.hidden_width, config.hidden_width, fan_out]
        for layer in range(NUM_LAYERS):
            rows, cols = widths[layer + 1], widths[layer]
            std = math.sqrt(2.0 / cols)
            if component in DISTRIBUTION_HEADS and layer == NUM_LAYERS - 1:
                std *= config.head_init_scale
            arrays[f"{component}.{layer}.weight"] = (
                torch.randn(rows, cols, generator=generator, dtype=torch.float32) * std
            )
            arrays[f"{component}.{layer}.bias"] = torch.zeros(rows, dtype=torch.float32)
    return ModelParams(arrays=arrays, config=config)


def _activate(h: torch.Tensor, activation: Activation) -> torch.Tensor:
    match activation:
        case Activation.SILU:
            return F.silu(h)
        case Activation.TANH:
            return torch.tanh(h)
        case Activation.IDENTITY:
            return h


def run_component(params: ModelParams, component: str, inputs: torch.Tensor) -> torch.Tensor:
    """Forward pass of one component MLP."""
    h = inputs
    for layer in range(NUM_LAYERS):
        h = F.linear(h, params[f"{component}.{layer}.weight"], params[f"{component}.{layer}.bias"])
        if layer < NUM_LAYERS - 1:
            h = _activate(h, params.config.activation)
    return h


def _check_width(name: str, tensor: torch.Tensor, width: int) -> None:
    if tensor.shape[-1] != width:
        raise ShapeMismatchError(name, width, tensor.shape[-1])


def positive_std(raw: torch.Tensor) -> torch.Tensor:
    """Softplus with a 1e-4 floor."""
    return F.softplus(raw) + STD_FLOOR


def split_features(params: ModelParams, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
    """Deterministic splitter ``x -> (x_s, x_z)``."""
    config = params.config
    _check_width("x", x, config.dim_x)
    out = run_component(params, "splitter", x.to(params.dtype))
    w = config.split_width
    return out[..., :w], out[..., w:]


def _mixture_head(params: ModelParams, name: str, inputs: torch.Tensor, dim: int) -> MixtureHead:
    k = params.config.mixture_components
    out = run_component(params, f"head_{name}", inputs)
    if not bool(torch.isfinite(out).all()):
        raise NumericError(f"head_{name}")
    logits = out[:, :k]
    rest = out[:, k:].reshape(-1, k, 2, dim)
    return MixtureHead(
        weights=torch.softmax(logits, dim=-1),
        means=rest[:, :, 0, :],
        stds=positive_std(rest[:, :, 1, :]),
    )


def _draw(
    head: MixtureHead, eps: torch.Tensor, gumbel: torch.Tensor
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor, torch.Tensor, torch.Tensor]:
    """Straight-through component choice followed by reparameterization.

    Returns (sample, selected mean, selected std, log q contribution, index).
    """
    scores = torch.log(head.weights) + gumbel
    index = scores.argmax(dim=-1)
    hard = F.one_hot(index, num_classes=head.weights.shape[-1]).to(head.weights.dtype)
    # forward value is exactly one-hot; gradients flow to the mixture weights
    choice = hard + (head.weights - head.weights.detach())
    mean = (choice.unsqueeze(-1) * head.means).sum(dim=1)
    std = (choice.unsqueeze(-1) * head.stds).sum(dim=1)
    sample = mean + std * eps
    log_weight = torch.log((hard * head.weights).sum(dim=-1))
    log_density = torch.distributions.Normal(mean, std).log_prob(sample).sum(-1)
    return sample, mean, std, log_density + log_weight, index


def infer_latents(
    params: ModelParams, x_s: torch.Tensor, x_z: torch.Tensor, noise: LatentNoise
) -> LatentSample:
    """Sample s, z, c from the inference heads.

    head_s reads x_s; head_z reads (x_z, s); head_c reads s, plus z when the
    causal mode links style to semantics.
    """
    config = params.config
    noise.validate(config)
    _check_width("x_s", x_s, config.split_width)
    _check_width("x_z", x_z, config.split_width)
    dtype = params.dtype
    x_s, x_z = x_s.to(dtype), x_z.to(dtype)
    eps_s, eps_z, eps_c = noise.eps_s.to(dtype), noise.eps_z.to(dtype), noise.eps_c.to(dtype)
    gumbel = noise.gumbel.to(dtype)

    head_s = _mixture_head(params, "s", x_s, config.dim_s)
    s, mean_s, std_s, log_q_s, idx_s = _draw(head_s, eps_s, gumbel[:, 0])

    head_z = _mixture_head(params, "z", torch.cat([x_z, s], dim=-1), config.dim_z)
    z, mean_z, std_z, log_q_z, idx_z = _draw(head_z, eps_z, gumbel[:, 1])

    content_input = torch.cat([s, z], dim=-1) if config.causal_mode.links_style else s
    head_c = _mixture_head(params, "c", content_input, config.dim_c)
    c, mean_c, std_c, log_q_c, idx_c = _draw(head_c, eps_c, gumbel[:, 2])

    return LatentSample(
        x_s=x_s,
        x_z=x_z,
        s=s,
        z=z,
        c=c,
        heads={"s": head_s, "z": head_z, "c": head_c},
        selected_means={"s": mean_s, "z": mean_z, "c": mean_c},
        selected_stds={"s": std_s, "z": std_z, "c": std_c},
        log_q=log_q_s + log_q_z + log_q_c,
        components={"s": idx_s, "z": idx_z, "c": idx_c},
    )


def prior_s(
    params: ModelParams, z: torch.Tensor, c: torch.Tensor
) -> tuple[torch.Tensor, torch.Tensor]:
    """Mean and std of p(s | z, c), or p(s | c) when the mode drops z."""
    config = params.config
    inputs = torch.cat([z, c], dim=-1) if config.causal_mode.links_style else c
    out = run_component(params, "prior_s", inputs)
    if not bool(torch.isfinite(out).all()):
        raise NumericError("prior_s")
    return out[..., : config.dim_s], positive_std(out[..., config.dim_s :])


def classify(params: ModelParams, c: torch.Tensor, x_s: torch.Tensor) -> torch.Tensor:
    """p(y | c, x_s) as class probabilities."""
    config = params.config
    _check_width("c", c, config.dim_c)
    _check_width("x_s", x_s, config.split_width)
    logits = run_component(params, "classifier", torch.cat([c, x_s], dim=-1).to(params.dtype))
    return torch.softmax(logits, dim=-1)


def decode(params: ModelParams, s: torch.Tensor, z: torch.Tensor) -> DecodedOutputs:
    """Decoder means for x_s, x_z and x with fixed-std Gaussian evaluators."""
    config = params.config
    _check_width("s", s, config.dim_s)
    _check_width("z", z, config.dim_z)
    x_s_hat = run_component(params, "dec_xs", s.to(params.dtype))
    x_z_hat = run_component(params, "dec_xz", z.to(params.dtype))
    x_hat = run_component(params, "dec_x", torch.cat([x_s_hat, x_z_hat], dim=-1))
    return DecodedOutputs(x_s_hat=x_s_hat, x_z_hat=x_z_hat, x_hat=x_hat, std=config.decoder_std)


def predictive_draws(
    params: ModelParams, x_s: torch.Tensor, x_z: torch.Tensor, noise: LatentNoise
) -> torch.Tensor:
    """Per-draw class probabilities, shape ``(M, n, num_classes)``.

    ``noise`` has batch shape ``(M, n)``.
    """
    if noise.eps_s.ndim != 3:
        raise ShapeMismatchError("noise.eps_s", "(M, n, dim_s)", tuple(noise.eps_s.shape))
    draws, n = noise.eps_s.shape[0], noise.eps_s.shape[1]
    if x_s.shape[0] != n:
        raise ShapeMismatchError("noise", n, x_s.shape[0])
    tiled_s = x_s.unsqueeze(0).expand(draws, *x_s.shape).reshape(draws * n, -1)
    tiled_z = x_z.unsqueeze(0).expand(draws, *x_z.shape).reshape(draws * n, -1)
    latents = infer_latents(params, tiled_s, tiled_z, noise.flatten())
    probs = classify(params, latents.c, latents.x_s)
    return probs.reshape(draws, n, -1)


def predict(params: ModelParams, x: torch.Tensor, noise: LatentNoise) -> torch.Tensor:
    """Monte-Carlo predictive q(y | x): mean of ``classify`` over the draws in ``noise``."""
    x_s, x_z = split_features(params, x)
    return predictive_draws(params, x_s, x_z, noise).mean(dim=0)


def predict_deterministic(params: ModelParams, x: torch.Tensor) -> torch.Tensor:
    """Single zero-noise draw (head means, heaviest components)."""
    noise = LatentNoise.zeros((1, x.shape[0]), params.config, dtype=params.dtype)
    return predict(params, x, noise)
