"""Evaluation feature: accuracy and OOD detection metrics."""
