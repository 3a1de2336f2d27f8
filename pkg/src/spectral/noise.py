"""Calibrated complex Gaussian noise for k-space data."""

import logging

import numpy as np

from .grid import SpectralGrid

logger = logging.getLogger(__name__)


def energy(grid: SpectralGrid) -> float:
    """Sum of squared moduli over all samples."""
    return float(np.sum(np.abs(grid.samples) ** 2))


def add_noise(grid: SpectralGrid, level: float, seed: int) -> SpectralGrid:
    """
    Add i.i.d. circular complex Gaussian noise scaled so that
    noise energy / signal energy == level**2.

    Args:
        grid: Clean k-space samples
        level: Relative noise amplitude (0.075 means 7.5%)
        seed: Seed for numpy's default generator

    Returns:
        New SpectralGrid; the input is returned unchanged for level 0
    """
    if level < 0:
        raise ValueError(f"Noise level must be nonnegative, got {level}")
    if level == 0:
        return grid

    signal = energy(grid)
    if signal == 0.0:
        logger.warning("Signal energy is zero; relative noise of level %s adds nothing", level)
        return grid

    rng = np.random.default_rng(seed)
    shape = grid.samples.shape
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    scale = level * np.sqrt(signal / float(np.sum(np.abs(raw) ** 2)))
    logger.debug("Noise level %.4f, seed %d, scale %.6e", level, seed, scale)
    return grid.with_samples(grid.samples + scale * raw)
