"""Theory domain entities: linear-Gaussian instances and bound reports."""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from fedsdwc_sim.shared.core.seeding import derive_seed, numpy_rng
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError, ShapeMismatchError

DET_TOLERANCE = 1e-8
SMALL_SIGMA = 0.1
SMALL_GAP = 0.2
SLOPE_RANGE = (1.7, 2.3)
SLOPE_DECADE = (0.01, 0.1)


@dataclass(frozen=True)
class LinearGaussianInstance:
    """Additive-noise model ``x = A v + mu``, ``y = h_vec . v + eps``.

    ``sigma_eps`` does not enter ``E[y|x]``; it is kept for completeness of
    the generative description.
    """

    A: np.ndarray
    h_vec: np.ndarray
    sigma_mu: float
    sigma_eps: float = 0.0

    def __post_init__(self) -> None:
        A = np.asarray(self.A, dtype=np.float64)
        h_vec = np.asarray(self.h_vec, dtype=np.float64).reshape(-1)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ShapeMismatchError("A", "square matrix", tuple(A.shape))
        if h_vec.shape != (A.shape[0],):
            raise ShapeMismatchError("h_vec", (A.shape[0],), tuple(h_vec.shape))
        if not np.all(np.isfinite(A)) or abs(np.linalg.det(A)) <= DET_TOLERANCE:
            raise InvalidInputError("A", "must be finite with |det A| > 1e-8")
        if not np.any(h_vec != 0.0):
            raise InvalidInputError("h_vec", "must be nonzero")
        for name in ("sigma_mu", "sigma_eps"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise InvalidInputError(name, "must be finite and nonnegative")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "h_vec", h_vec)

    @property
    def dim_v(self) -> int:
        return int(self.A.shape[0])


@dataclass(frozen=True)
class ClientPrior:
    """Gaussian prior over ``v = (c, z)`` for one client or the OOD domain."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        cov = np.asarray(self.cov, dtype=np.float64)
        d = mean.shape[0]
        if cov.shape != (d, d):
            raise ShapeMismatchError("cov", (d, d), tuple(cov.shape))
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise InvalidInputError("prior", "mean and cov must be finite")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=1e-12):
            raise InvalidInputError("cov", "must be symmetric")
        if np.linalg.eigvalsh(cov).min() <= 0.0:
            raise InvalidInputError("cov", "must be positive definite")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim_v(self) -> int:
        return int(self.mean.shape[0])


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sample mean with its standard error."""

    value: float
    std_error: float

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "MonteCarloEstimate":
        samples = np.asarray(samples, dtype=np.float64)
        if samples.size == 0:
            raise InvalidInputError("x_samples", "must be nonempty")
        std_error = 0.0
        if samples.size > 1:
            std_error = float(samples.std(ddof=1) / math.sqrt(samples.size))
        return cls(value=float(samples.mean()), std_error=std_error)


@dataclass
class BoundRow:
    """Both sides of the bound at one noise level.

    ``check_a`` is None outside the small-noise, small-gap regime.
    """

    sigma_mu: float
    lhs: float
    rhs: float
    mc_std_error: float
    check_a: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "sigma_mu": self.sigma_mu,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "mc_std_error": self.mc_std_error,
            "check_a": self.check_a,
        }


@dataclass
class BoundReport:
    """Bound rows over a noise grid, with the direction and scaling checks."""

    prior_gap: float
    num_x: int
    rows: list[BoundRow] = field(default_factory=list)
    slope: float | None = None
    check_b: bool | None = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        for row in self.rows:
            for value in (row.sigma_mu, row.lhs, row.rhs, row.mc_std_error):
                if not math.isfinite(value) or value < 0.0:
                    raise InvalidInputError("bound_report", "entries must be finite and >= 0")

    @property
    def check_a(self) -> bool | None:
        """All applicable rows satisfy the bound; None when none applies."""
        applicable = [row.check_a for row in self.rows if row.check_a is not None]
        return all(applicable) if applicable else None

    def table_rows(self) -> list[dict[str, Any]]:
        return [{**row.to_dict(), "check_b": self.check_b} for row in self.rows]

    def to_dict(self) -> dict[str, Any]:
        return {
            "prior_gap": self.prior_gap,
            "num_x": self.num_x,
            "rows": [row.to_dict() for row in self.rows],
            "slope": self.slope,
            "check_a": self.check_a,
            "check_b": self.check_b,
        }


class TheoryConfig(BaseModel):
    """Bound verification section of an experiment config."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    enabled: bool = False
    dim_v: int = Field(default=1, ge=1)
    sigma_grid: list[float] = Field(default_factory=lambda: [0.01, 0.02, 0.05, 0.1])
    prior_gap: float = Field(default=0.2, ge=0.0)
    num_x: int = Field(default=100_000, ge=1)
    sigma_eps: float = Field(default=0.1, ge=0.0)
    mixing_seed: int = 0
    chunk_size: int = Field(default=16_384, ge=1)

    @field_validator("sigma_grid")
    @classmethod
    def check_grid(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("sigma_grid must be nonempty")
        if any(not math.isfinite(s) or s < 0.0 for s in v):
            raise ValueError("sigma_grid entries must be finite and >= 0")
        return v


@dataclass(frozen=True)
class InstanceFamily:
    """Instances sharing ``A`` and ``h_vec`` and differing in ``sigma_mu``.

    One client with a standard normal prior; the OOD prior is the same
    Gaussian shifted by ``prior_gap`` along the unit diagonal. For
    ``dim_v > 1`` the singular values of ``A`` lie in [1, 2].
    """

    dim_v: int = 1
    mixing_seed: int = 0
    sigma_eps: float = 0.0

    @classmethod
    def from_config(cls, config: TheoryConfig) -> "InstanceFamily":
        return cls(dim_v=config.dim_v, mixing_seed=config.mixing_seed, sigma_eps=config.sigma_eps)

    def maps(self) -> tuple[np.ndarray, np.ndarray]:
        if self.dim_v == 1:
            return np.ones((1, 1)), np.ones(1)
        rng = numpy_rng(derive_seed(self.mixing_seed, "theory", "maps"))
        q, _ = np.linalg.qr(rng.standard_normal((self.dim_v, self.dim_v)))
        A = q * rng.uniform(1.0, 2.0, size=self.dim_v)
        h_vec = rng.standard_normal(self.dim_v)
        return A, h_vec / np.linalg.norm(h_vec)

    def instance(self, sigma_mu: float) -> LinearGaussianInstance:
        A, h_vec = self.maps()
        return LinearGaussianInstance(
            A=A, h_vec=h_vec, sigma_mu=sigma_mu, sigma_eps=self.sigma_eps
        )

    def client_priors(self) -> tuple[list[ClientPrior], np.ndarray]:
        return [ClientPrior(np.zeros(self.dim_v), np.eye(self.dim_v))], np.ones(1)

    def ood_prior(self, prior_gap: float) -> ClientPrior:
        direction = np.ones(self.dim_v) / math.sqrt(self.dim_v)
        return ClientPrior(prior_gap * direction, np.eye(self.dim_v))
