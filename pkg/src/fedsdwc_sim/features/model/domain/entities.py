"""Model domain entities."""

from dataclasses import dataclass, field, replace

import torch
from pydantic import BaseModel, ConfigDict, Field

from fedsdwc_sim.features.model.domain.enums import Activation, CausalMode
from fedsdwc_sim.shared.domain.exceptions import ShapeMismatchError

STD_FLOOR = 1e-4
HEADS = ("s", "z", "c")


class ModelConfig(BaseModel):
    """Architecture of the FedSDWC network."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dim_x: int = Field(default=20, ge=2)
    dim_s: int = Field(default=4, ge=1)
    dim_z: int = Field(default=4, ge=1)
    dim_c: int = Field(default=4, ge=1)
    num_classes: int = Field(default=4, ge=1)
    hidden_width: int = Field(default=64, ge=1)
    mixture_components: int = Field(default=1, ge=1)
    causal_mode: CausalMode = CausalMode.WEAK
    mc_samples: int = Field(default=1, ge=1, description="Draws used by predict")
    decoder_std: float = Field(default=0.5, gt=0.0)
    head_init_scale: float = Field(
        default=0.01,
        ge=0.0,
        description="Multiplier on the initial output-layer weights of the distribution heads",
    )
    activation: Activation = Activation.SILU
    feature_width: int | None = Field(
        default=None, ge=1, description="Width of x_s and x_z; dim_x // 2 when omitted"
    )

    @property
    def split_width(self) -> int:
        return self.feature_width if self.feature_width is not None else self.dim_x // 2

    def head_dim(self, head: str) -> int:
        return {"s": self.dim_s, "z": self.dim_z, "c": self.dim_c}[head]


@dataclass
class ModelParams:
    """Named parameter arrays of every network component plus the config.

    Names follow ``<component>.<layer>.<weight|bias>`` and are identical for
    every client and the server.
    """

    arrays: dict[str, torch.Tensor]
    config: ModelConfig

    def __getitem__(self, name: str) -> torch.Tensor:
        return self.arrays[name]

    def names(self) -> list[str]:
        return sorted(self.arrays)

    def parameters(self) -> list[torch.Tensor]:
        """Arrays in sorted-name order."""
        return [self.arrays[name] for name in self.names()]

    @property
    def dtype(self) -> torch.dtype:
        return next(iter(self.arrays.values())).dtype

    def clone(self) -> "ModelParams":
        """Independent copy detached from any autograd graph."""
        return replace(
            self, arrays={name: t.detach().clone() for name, t in self.arrays.items()}
        )

    def to(self, dtype: torch.dtype) -> "ModelParams":
        return replace(
            self, arrays={name: t.detach().to(dtype).clone() for name, t in self.arrays.items()}
        )

    def requires_grad_(self, flag: bool = True) -> "ModelParams":
        for tensor in self.arrays.values():
            tensor.requires_grad_(flag)
        return self

    def num_parameters(self) -> int:
        return int(sum(t.numel() for t in self.arrays.values()))

    def all_finite(self) -> bool:
        return all(bool(torch.isfinite(t).all()) for t in self.arrays.values())


@dataclass
class LatentNoise:
    """Explicit randomness of one inference pass.

    ``eps_*`` are standard normals for the reparameterization; ``gumbel`` holds
    Gumbel perturbations of shape ``(..., 3, K)`` for the component choice of the
    s, z and c heads. Zero Gumbel noise selects the heaviest component. Any
    leading batch shape is allowed (``predict`` uses ``(M, n)``).
    """

    eps_s: torch.Tensor
    eps_z: torch.Tensor
    eps_c: torch.Tensor
    gumbel: torch.Tensor

    @property
    def batch_shape(self) -> torch.Size:
        return self.eps_s.shape[:-1]

    @classmethod
    def zeros(
        cls, batch_shape: tuple[int, ...], config: ModelConfig, dtype: torch.dtype = torch.float32
    ) -> "LatentNoise":
        return cls(
            eps_s=torch.zeros(*batch_shape, config.dim_s, dtype=dtype),
            eps_z=torch.zeros(*batch_shape, config.dim_z, dtype=dtype),
            eps_c=torch.zeros(*batch_shape, config.dim_c, dtype=dtype),
            gumbel=torch.zeros(*batch_shape, 3, config.mixture_components, dtype=dtype),
        )

    @classmethod
    def sample(
        cls,
        batch_shape: tuple[int, ...],
        config: ModelConfig,
        generator: torch.Generator,
        dtype: torch.dtype = torch.float32,
    ) -> "LatentNoise":
        eps_s = torch.randn(*batch_shape, config.dim_s, generator=generator, dtype=dtype)
        eps_z = torch.randn(*batch_shape, config.dim_z, generator=generator, dtype=dtype)
        eps_c = torch.randn(*batch_shape, config.dim_c, generator=generator, dtype=dtype)
        uniform = torch.rand(
            *batch_shape, 3, config.mixture_components, generator=generator, dtype=dtype
        )
        tiny = torch.finfo(dtype).tiny
        gumbel = -torch.log(-torch.log(uniform.clamp(min=tiny, max=1.0 - 1e-7)))
        return cls(eps_s=eps_s, eps_z=eps_z, eps_c=eps_c, gumbel=gumbel)

    def validate(self, config: ModelConfig) -> None:
        """Check every noise block against the configured latent sizes."""
        for name, tensor, size in (
            ("eps_s", self.eps_s, config.dim_s),
            ("eps_z", self.eps_z, config.dim_z),
            ("eps_c", self.eps_c, config.dim_c),
        ):
            if tensor.shape[-1] != size:
                raise ShapeMismatchError(f"noise.{name}", size, tensor.shape[-1])
        expected = (3, config.mixture_components)
        if tuple(self.gumbel.shape[-2:]) != expected:
            raise ShapeMismatchError("noise.gumbel", expected, tuple(self.gumbel.shape[-2:]))

    def flatten(self) -> "LatentNoise":
        """Collapse all leading dimensions into one batch axis."""
        return LatentNoise(
            eps_s=self.eps_s.reshape(-1, self.eps_s.shape[-1]),
            eps_z=self.eps_z.reshape(-1, self.eps_z.shape[-1]),
            eps_c=self.eps_c.reshape(-1, self.eps_c.shape[-1]),
            gumbel=self.gumbel.reshape(-1, *self.gumbel.shape[-2:]),
        )

    def index(self, rows: torch.Tensor) -> "LatentNoise":
        """Select rows along the last batch axis."""
        return LatentNoise(
            eps_s=self.eps_s[..., rows, :],
            eps_z=self.eps_z[..., rows, :],
            eps_c=self.eps_c[..., rows, :],
            gumbel=self.gumbel[..., rows, :, :],
        )


@dataclass
class MixtureHead:
    """Diagonal Gaussian mixture emitted by an inference head.

    Shapes: ``weights (n, K)``, ``means (n, K, d)``, ``stds (n, K, d)``.
    """

    weights: torch.Tensor
    means: torch.Tensor
    stds: torch.Tensor

    def distribution(self) -> torch.distributions.MixtureSameFamily:
        components = torch.distributions.Independent(
            torch.distributions.Normal(self.means, self.stds), 1
        )
        return torch.distributions.MixtureSameFamily(
            torch.distributions.Categorical(probs=self.weights), components
        )

    def log_prob(self, value: torch.Tensor) -> torch.Tensor:
        """Mixture log-density of ``value (n, d)``."""
        return self.distribution().log_prob(value)


@dataclass
class LatentSample:
    """Reparameterized latents with the mixtures they were drawn from."""

    x_s: torch.Tensor
    x_z: torch.Tensor
    s: torch.Tensor
    z: torch.Tensor
    c: torch.Tensor
    heads: dict[str, MixtureHead]
    selected_means: dict[str, torch.Tensor]
    selected_stds: dict[str, torch.Tensor]
    log_q: torch.Tensor
    components: dict[str, torch.Tensor] = field(default_factory=dict)


@dataclass
class DecodedOutputs:
    """Gaussian decoder means with log-density evaluators."""

    x_s_hat: torch.Tensor
    x_z_hat: torch.Tensor
    x_hat: torch.Tensor
    std: float

    def _log_density(self, mean: torch.Tensor, target: torch.Tensor) -> torch.Tensor:
        normal = torch.distributions.Normal(mean, torch.full_like(mean, self.std))
        return normal.log_prob(target.to(mean.dtype)).sum(-1)

    def log_px_s(self, target: torch.Tensor) -> torch.Tensor:
        """log p(x_s | s) per row."""
        return self._log_density(self.x_s_hat, target)

    def log_px_z(self, target: torch.Tensor) -> torch.Tensor:
        """log p(x_z | z) per row."""
        return self._log_density(self.x_z_hat, target)

    def log_px(self, target: torch.Tensor) -> torch.Tensor:
        """log p(x | x_s, x_z) per row."""
        return self._log_density(self.x_hat, target)
