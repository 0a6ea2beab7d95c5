"""Data feature: synthetic SCM data, corruptions, partitions and augmentation."""
