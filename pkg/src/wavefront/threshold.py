"""Threshold policies and the above-threshold pixel set."""

import logging
from enum import Enum
from typing import Optional

import numpy as np

from src.config import settings
from src.filters import FilterConstants
from src.spectral import ImageGrid

logger = logging.getLogger(__name__)


class ThresholdMode(str, Enum):
    """How tau is chosen for a filtered image."""
    THEORY = "theory"       # max(T, fraction * max|f|)
    FRACTION = "fraction"   # fraction * max|f|
    ABSOLUTE = "absolute"   # fixed value


def threshold_set(image: ImageGrid, tau: float) -> np.ndarray:
    """Pixel centers with |value| >= tau, shape (n, 2), in row-major pixel order."""
    if not tau > 0:
        raise ValueError(f"Threshold must be positive, got {tau}")
    return image.points[image.magnitude >= tau]


def choose_threshold(
    image: ImageGrid,
    mode: ThresholdMode | str = ThresholdMode.THEORY,
    constants: Optional[FilterConstants] = None,
    fraction: float = settings.TAU_FRACTION,
    absolute: Optional[float] = None,
    scale: float = 1.0,
) -> float:
    """
    Pick tau for one filtered image.

    The theory mode compares scale * T with the fraction rule; `scale` takes
    T from theorem-raw units to the image's units (FilterParams.theory_scale).
    It falls back to the fraction rule when T is unavailable or not positive.
    An all-zero image gets tau = inf (empty set).
    """
    mode = ThresholdMode(mode)
    if mode is ThresholdMode.ABSOLUTE:
        if absolute is None or absolute <= 0:
            raise ValueError(f"Absolute threshold must be positive, got {absolute}")
        return float(absolute)
    if not 0 < fraction <= 1:
        raise ValueError(f"Threshold fraction must lie in (0, 1], got {fraction}")

    peak = float(image.magnitude.max())
    empirical = fraction * peak if peak > 0 else np.inf
    if mode is ThresholdMode.FRACTION:
        return empirical
    if constants is None or constants.theory_vacuous:
        logger.warning("Theory threshold unavailable or vacuous; using %.2f of the peak", fraction)
        return empirical
    if not scale > 0:
        raise ValueError(f"Threshold scale must be positive, got {scale}")
    scaled = constants.threshold_T * scale
    tau = max(scaled, empirical)
    logger.debug("tau=%.4g (T=%.4g scaled to %.4g, peak=%.4g)", tau, constants.threshold_T, scaled, peak)
    return tau
