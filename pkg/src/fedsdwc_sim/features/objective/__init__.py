"""Objective feature: training losses."""
