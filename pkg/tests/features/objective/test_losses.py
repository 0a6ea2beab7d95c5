import math

import numpy as np
import pytest
import torch

from fedsdwc_sim.features.model.application.network import (
    classify,
    decode,
    init_params,
    prior_s,
    split_features,
)
from fedsdwc_sim.features.model.domain.entities import ModelConfig
from fedsdwc_sim.features.model.domain.enums import Activation, CausalMode
from fedsdwc_sim.features.objective.application import (
    elbo_loss,
    elbo_terms,
    gaussian_kl,
    intervention_loss,
    total_loss,
)
from fedsdwc_sim.features.objective.domain import ObjectiveConfig, ObjectiveNoise
from fedsdwc_sim.shared.core.seeding import torch_generator
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError, NumericError

OBJECTIVE = ObjectiveConfig()


def _noise(params, n: int, seed: int = 0, mc_samples: int = 1) -> ObjectiveNoise:
    return ObjectiveNoise.sample(
        n, params.config, torch_generator(seed), mc_samples=mc_samples, dtype=params.dtype
    )


def test_kl_of_identical_gaussians_is_zero():
    mean, std = torch.tensor([0.3, -1.2]), torch.tensor([0.5, 2.0])

    assert gaussian_kl(mean, std, mean, std).item() == 0.0


def test_kl_of_unit_shift_is_one_half():
    value = gaussian_kl(torch.tensor(1.0), torch.tensor(1.0), torch.tensor(0.0), torch.tensor(1.0))

    assert value.item() == pytest.approx(0.5, abs=1e-12)


def test_kl_is_nonnegative():
    generator = torch_generator(0)
    for _ in range(100):
        mean_a, mean_b = torch.randn(3, generator=generator), torch.randn(3, generator=generator)
        std_a = torch.rand(3, generator=generator) + 0.1
        std_b = torch.rand(3, generator=generator) + 0.1
        assert gaussian_kl(mean_a, std_a, mean_b, std_b).item() >= 0.0


def test_kl_rejects_nonpositive_std():
    with pytest.raises(InvalidInputError):
        gaussian_kl(torch.zeros(2), torch.tensor([1.0, 0.0]), torch.zeros(2), torch.ones(2))


def test_confident_correct_prediction_has_tiny_cross_entropy(make_params, random_batch):
    params = make_params(seed=1)
    for name in params.names():
        if name.startswith("classifier.2."):
            params.arrays[name] = torch.zeros_like(params[name])
    params.arrays["classifier.2.bias"] = torch.tensor([40.0, 0.0, 0.0], dtype=torch.float64)
    features, _ = random_batch(6)
    labels = torch.zeros(6, dtype=torch.long)

    breakdown = elbo_loss(params, features, labels, _noise(params, 6), OBJECTIVE)

    assert breakdown.ce.item() <= 1e-3
    assert breakdown.ic.item() == 0.0


def test_duplicated_batch_leaves_every_term_unchanged(make_params, random_batch):
    params = make_params(seed=2)
    features, labels = random_batch(5)
    noise = _noise(params, 5, seed=3)
    rows = torch.cat([torch.arange(5), torch.arange(5)])

    single = elbo_loss(params, features, labels, noise, OBJECTIVE).to_dict()
    double = elbo_loss(
        params, features[rows], labels[rows], noise.select(rows), OBJECTIVE
    ).to_dict()

    for name, value in single.items():
        assert double[name] == pytest.approx(value, abs=1e-6), name


def test_non_finite_head_output_names_the_head(make_params, random_batch):
    params = make_params(seed=3)
    params.arrays["head_s.2.bias"] = torch.full_like(params["head_s.2.bias"], float("nan"))
    features, labels = random_batch(4)

    with pytest.raises(NumericError) as excinfo:
        elbo_loss(params, features, labels, _noise(params, 4), OBJECTIVE)

    assert excinfo.value.term == "head_s"


@pytest.mark.parametrize("bad_labels", [[0, 1, 3, 0], [0, -1, 0, 0]])
def test_labels_outside_class_range_are_rejected(make_params, random_batch, bad_labels):
    params = make_params()
    features, _ = random_batch(4)

    with pytest.raises(InvalidInputError):
        elbo_loss(params, features, torch.tensor(bad_labels), _noise(params, 4), OBJECTIVE)


def test_zero_intervention_scale_gives_exact_zero(make_params, random_batch):
    params = make_params(seed=4)
    features, _ = random_batch(8)

    value = intervention_loss(params, features, 0.0, _noise(params, 8), OBJECTIVE)

    assert value.item() == 0.0


@pytest.mark.parametrize("scale", [0.5, 5.0])
def test_style_perturbation_is_invisible_without_a_causal_link(make_params, random_batch, scale):
    params = make_params(seed=5, causal_mode=CausalMode.NONE)
    features, _ = random_batch(8)

    value = intervention_loss(params, features, scale, _noise(params, 8, seed=1), OBJECTIVE)

    assert value.item() <= 1e-6


def test_larger_perturbations_diverge_more_on_average(make_params, random_batch):
    params = make_params(seed=6)
    features, _ = random_batch(16, seed=2)

    def mean_loss(scale: float) -> float:
        return float(
            np.mean(
                [
                    intervention_loss(params, features, scale, _noise(params, 16, seed), OBJECTIVE)
                    .detach()
                    .item()
                    for seed in range(50)
                ]
            )
        )

    assert mean_loss(1.0) >= mean_loss(0.1)


def test_intervention_term_is_wired_only_in_weak_mode(make_params, random_batch):
    features, labels = random_batch(6)
    strong = make_params(seed=7, causal_mode=CausalMode.STRONG)

    breakdown = total_loss(strong, features, labels, OBJECTIVE, 1.0, _noise(strong, 6))

    assert breakdown.ic.item() == 0.0


def test_weak_mode_at_zero_scale_equals_the_elbo_total(make_params, random_batch):
    params = make_params(seed=8)
    features, labels = random_batch(6)
    noise = _noise(params, 6, seed=2)

    combined = total_loss(params, features, labels, OBJECTIVE, 0.0, noise)
    elbo = elbo_loss(params, features, labels, noise, OBJECTIVE)

    assert combined.total.item() == pytest.approx(elbo.total.item(), abs=1e-6)


def test_total_is_the_sum_of_its_terms(make_params, random_batch):
    params = make_params(seed=9)
    features, labels = random_batch(6)

    breakdown = total_loss(params, features, labels, OBJECTIVE, 1.5, _noise(params, 6, seed=4))

    expected = breakdown.ce + breakdown.elbo_weighted + breakdown.ic
    assert breakdown.total.item() == pytest.approx(expected.item(), abs=1e-6)
    assert breakdown.ic.item() >= 0.0


@pytest.mark.parametrize(
    "component",
    [
        "splitter",
        "head_s",
        "head_z",
        "head_c",
        "prior_s",
        "dec_xs",
        "dec_xz",
        "dec_x",
        "classifier",
    ],
)
def test_total_loss_gradients_match_finite_differences(make_params, random_batch, component):
    # a clip of 1 pins the detached importance weight at 1
    objective = ObjectiveConfig(weight_clip=1.0)
    params = make_params(seed=10).requires_grad_(True)
    features, labels = random_batch(5, seed=3)
    noise = _noise(params, 5, seed=5)

    def loss() -> torch.Tensor:
        return total_loss(params, features, labels, objective, 1.0, noise).total

    loss().backward()
    rng = np.random.default_rng(0)
    names = [name for name in params.names() if name.startswith(f"{component}.")]
    for _ in range(10):
        tensor = params[names[rng.integers(len(names))]]
        index = tuple(int(rng.integers(size)) for size in tensor.shape)
        original = tensor.data[index].item()
        with torch.no_grad():
            tensor.data[index] = original + 1e-6
            upper = loss().item()
            tensor.data[index] = original - 1e-6
            lower = loss().item()
            tensor.data[index] = original
        numeric = (upper - lower) / 2e-6
        analytic = tensor.grad[index].item()
        assert abs(analytic - numeric) <= 1e-3 * max(abs(analytic), abs(numeric), 1e-5)


def _log_evidence(params, x: torch.Tensor, label: int) -> float:
    """log p(x, x_s, x_z, y) of the linear-Gaussian network by quadrature.

    The semantic latent is integrated in closed form (it enters every
    observation mean affinely); content and style use a uniform grid.
    """
    std = params.config.decoder_std
    x_s, x_z = split_features(params, x)
    grid = torch.linspace(-8.0, 8.0, 321, dtype=torch.float64)
    spacing = float(grid[1] - grid[0])
    z, c = (axis.reshape(-1, 1) for axis in torch.meshgrid(grid, grid, indexing="ij"))
    rows = z.shape[0]

    mean_s, std_s = prior_s(params, z, c)
    at_zero = decode(params, torch.zeros(rows, 1, dtype=torch.float64), z)
    at_one = decode(params, torch.ones(rows, 1, dtype=torch.float64), z)
    offset = torch.cat([at_zero.x_s_hat, at_zero.x_hat], dim=-1)
    slope = torch.cat([at_one.x_s_hat, at_one.x_hat], dim=-1) - offset
    residual = torch.cat([x_s, x], dim=-1) - (offset + slope * mean_s)

    # observations given (z, c): Normal(offset + slope * mean_s, std^2 I + var_s slope slope^T)
    var_s = std_s**2
    denom = std**2 + var_s * (slope**2).sum(-1, keepdim=True)
    projection = (slope * residual).sum(-1, keepdim=True)
    quad = ((residual**2).sum(-1, keepdim=True) - var_s * projection**2 / denom) / std**2
    log_det = 3 * math.log(std**2) + torch.log(denom / std**2)
    log_obs = -0.5 * (3 * math.log(2 * math.pi) + log_det + quad)

    standard = torch.distributions.Normal(0.0, 1.0)
    log_xz = torch.distributions.Normal(at_zero.x_z_hat, std).log_prob(x_z).sum(-1, keepdim=True)
    log_y = torch.log(classify(params, c, x_s.expand(rows, -1))[:, label : label + 1])
    log_joint = standard.log_prob(z) + standard.log_prob(c) + log_xz + log_y + log_obs
    return float(torch.logsumexp(log_joint.reshape(-1), dim=0)) + 2 * math.log(spacing)


def test_negated_loss_lower_bounds_the_log_evidence():
    config = ModelConfig(
        dim_x=2,
        dim_s=1,
        dim_z=1,
        dim_c=1,
        num_classes=2,
        hidden_width=3,
        decoder_std=1.0,
        activation=Activation.IDENTITY,
    )
    draws = 4096
    rng = np.random.default_rng(0)
    for seed in range(10):
        params = init_params(config, seed=seed).to(torch.float64)
        x = torch.as_tensor(rng.standard_normal((1, 2)))
        label = int(rng.integers(2))
        noise = ObjectiveNoise.sample(
            draws, config, torch_generator(100 + seed), dtype=torch.float64
        )

        with torch.no_grad():
            terms = elbo_terms(
                params,
                x.expand(draws, -1),
                torch.full((draws,), label),
                noise,
                OBJECTIVE,
            )
            values = -(terms["ce"] + terms["elbo_weighted"])
            log_evidence = _log_evidence(params, x, label)

        error = float(values.std() / math.sqrt(draws))
        assert float(values.mean()) <= log_evidence + max(3.0 * error, 1e-3), seed
