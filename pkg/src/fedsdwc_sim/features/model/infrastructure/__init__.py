"""Model infrastructure: checkpoint storage."""

from fedsdwc_sim.features.model.infrastructure.checkpoint import load_checkpoint, save_checkpoint

__all__ = ["load_checkpoint", "save_checkpoint"]
