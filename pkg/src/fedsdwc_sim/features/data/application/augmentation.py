"""Fourier amplitude mixing on flat feature vectors."""

import torch

from fedsdwc_sim.shared.core.seeding import torch_generator
from fedsdwc_sim.shared.domain.exceptions import InvalidInputError


def draw_amplitude_mix(n: int, mix_ratio: float, seed: int) -> tuple[torch.Tensor, torch.Tensor]:
    """Mixing weights ``lam ~ U(0, mix_ratio)`` and partner rows for a batch of ``n``."""
    generator = torch_generator(seed)
    lam = torch.rand(n, generator=generator, dtype=torch.float64) * mix_ratio
    partner = torch.randint(0, n, (n,), generator=generator)
    return lam, partner


def fourier_augment(batch: torch.Tensor, mix_ratio: float, seed: int) -> torch.Tensor:
    """Mix each row's amplitude spectrum with a random partner's, keeping its phase.

    Returns a tensor with the shape and dtype of ``batch``.
    """
    if not 0.0 <= mix_ratio <= 1.0:
        raise InvalidInputError("mix_ratio", "must lie in [0, 1]")
    if batch.ndim != 2 or batch.shape[0] < 2:
        raise InvalidInputError("batch", "needs at least two rows to draw partners")

    lam, partner = draw_amplitude_mix(batch.shape[0], mix_ratio, seed)
    lam = lam.to(batch.dtype).unsqueeze(1)

    spectrum = torch.fft.fft(batch, dim=1)
    amplitude = torch.abs(spectrum)
    mixed = (1.0 - lam) * amplitude + lam * amplitude[partner]
    recombined = torch.mul(mixed, torch.exp(1j * torch.angle(spectrum)))
    return torch.real(torch.fft.ifft(recombined, dim=1)).to(batch.dtype)
