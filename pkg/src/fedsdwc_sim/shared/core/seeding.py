"""Derived seeds: every random stream is a pure function of the master seed."""

import hashlib

import numpy as np
import torch

_SEED_MASK = (1 << 63) - 1


def derive_seed(master: int, *path: str | int) -> int:
    """Hash ``(master, *path)`` into a 63-bit seed.

    Args:
        master: Master seed of the experiment.
        path: Component names and indices, e.g. ``("round", 3, "client", 7)``.

    Returns:
        Non-negative integer usable by numpy and torch generators.
    """
    text = "/".join([str(int(master)), *(str(part) for part in path)])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") & _SEED_MASK


def numpy_rng(seed: int) -> np.random.Generator:
    """numpy generator for a derived seed."""
    return np.random.default_rng(seed)


def torch_generator(seed: int) -> torch.Generator:
    """CPU torch generator for a derived seed."""
    generator = torch.Generator(device="cpu")
    generator.manual_seed(seed)
    return generator
