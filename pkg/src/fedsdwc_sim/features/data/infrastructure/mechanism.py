"""Concrete mechanisms of the synthetic structural causal model."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fedsdwc_sim.features.data.domain.entities import ScmSpec


def _row_stochastic_signed(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Mixed-sign matrix whose rows sum to one (constant shifts pass through unchanged)."""
    raw = rng.standard_normal((rows, cols))
    return raw - raw.mean(axis=1, keepdims=True) + 1.0 / cols


def _well_conditioned(rng: np.random.Generator, size: int) -> np.ndarray:
    """Orthogonal matrix times a diagonal in [0.5, 1.5]; condition number <= 3."""
    q, r = np.linalg.qr(rng.standard_normal((size, size)))
    q = q * np.sign(np.diag(r))
    return q @ np.diag(rng.uniform(0.5, 1.5, size=size))


@dataclass(frozen=True)
class ScmMechanism:
    """Fixed functions of one ``ScmSpec``.

    Pathway: ``c | y`` (class mixture) and ``z`` feed ``s = c + weak_link * tanh(B z)``;
    ``x_s = g_s(s)``, ``x_z = g_z(z)`` and ``x = f(x_s, x_z) = L2 asinh(L1 [x_s, x_z])``.
    """

    spec: ScmSpec
    class_means: np.ndarray
    ood_means: np.ndarray
    style_to_semantic: np.ndarray
    g_s_matrix: np.ndarray
    g_z_matrix: np.ndarray
    inner_mix: np.ndarray
    outer_mix: np.ndarray

    def semantic(self, c: np.ndarray, z: np.ndarray) -> np.ndarray:
        return c + self.spec.weak_link * np.tanh(z @ self.style_to_semantic.T)

    def g_s(self, s: np.ndarray) -> np.ndarray:
        return s @ self.g_s_matrix.T

    def g_z(self, z: np.ndarray) -> np.ndarray:
        return z @ self.g_z_matrix.T

    def mix(self, x_s: np.ndarray, x_z: np.ndarray) -> np.ndarray:
        """Invertible mixing ``f``."""
        u = np.concatenate([x_s, x_z], axis=1)
        return np.arcsinh(u @ self.inner_mix.T) @ self.outer_mix.T

    def unmix(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Exact inverse ``f^-1`` returning the invariant and variant halves."""
        hidden = np.linalg.solve(self.outer_mix, x.T).T
        u = np.linalg.solve(self.inner_mix, np.sinh(hidden).T).T
        half = self.spec.half_width
        return u[:, :half], u[:, half:]


@lru_cache(maxsize=32)
def build_mechanism(spec: ScmSpec) -> ScmMechanism:
    """Construct (and cache) the mechanism determined by ``spec.mixing_seed``."""
    rng = np.random.default_rng(spec.mixing_seed)

    directions = rng.standard_normal((spec.num_classes, spec.dim_c))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    class_means = spec.class_separation * directions

    ood_directions = rng.standard_normal((spec.num_classes, spec.dim_c))
    ood_directions /= np.linalg.norm(ood_directions, axis=1, keepdims=True)
    # triangle inequality keeps every unseen mean > 4 std away from all class means
    ood_radius = float(np.linalg.norm(class_means, axis=1).max()) + 4.0 * spec.content_std + 1.0
    ood_means = ood_radius * ood_directions

    style_to_semantic = rng.standard_normal((spec.dim_c, spec.dim_z)) / np.sqrt(spec.dim_z)
    g_s_matrix = _row_stochastic_signed(rng, spec.half_width, spec.dim_c)
    g_z_matrix = _row_stochastic_signed(rng, spec.half_width, spec.dim_z)
    inner_mix = _well_conditioned(rng, spec.dim_x)
    outer_mix = _well_conditioned(rng, spec.dim_x)

    return ScmMechanism(
        spec=spec,
        class_means=class_means,
        ood_means=ood_means,
        style_to_semantic=style_to_semantic,
        g_s_matrix=g_s_matrix,
        g_z_matrix=g_z_matrix,
        inner_mix=inner_mix,
        outer_mix=outer_mix,
    )
