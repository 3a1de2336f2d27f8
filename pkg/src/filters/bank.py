"""
Directional filtering of k-space data.

[D_theta f](x) = F^-1[W(k_r) V(k_theta - theta) f_hat(k)](x), evaluated at
pixel centers with the convention carried by FilterParams.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from src.config import settings
from src.spectral import ImageGrid, SpectralGrid, inverse_transform

from .params import Detector, FilterParams
from .windows import StepRadialWindow

logger = logging.getLogger(__name__)

K_MAX_RTOL = 1e-12


def _check_band(grid: SpectralGrid, params: FilterParams) -> None:
    if params.k_max > grid.k_max * (1 + K_MAX_RTOL):
        raise ValueError(f"Filter k_max={params.k_max:.4f} exceeds the grid's k_max={grid.k_max:.4f}")


def directional_multiplier(grid: SpectralGrid, theta: float, params: FilterParams, angular: str = "triangle") -> np.ndarray:
    """W(|k|) V(k_theta - theta) on the grid's lattice, times the window gain."""
    from . import get_window

    radial = StepRadialWindow(params.k_tex, params.k_max)
    window = get_window(angular, alpha=params.alpha)
    return params.window_gain * radial(grid.k_r) * window(grid.k_theta - theta)


def apply_directional_filter(
    grid: SpectralGrid, theta: float, params: FilterParams, angular: str = "triangle"
) -> ImageGrid:
    """Multiply by W(k_r) V(k_theta - theta) and invert."""
    _check_band(grid, params)
    filtered = grid.with_samples(grid.samples * directional_multiplier(grid, theta, params, angular))
    return inverse_transform(filtered, params.convention)


def apply_directional_derivative(grid: SpectralGrid, theta: float, params: FilterParams) -> ImageGrid:
    """Baseline detector: multiply by i (k . theta_hat) on |k| <= k_max and invert."""
    _check_band(grid, params)
    k = grid.k_vectors
    multiplier = 1j * (k[..., 0] * math.cos(theta) + k[..., 1] * math.sin(theta))
    multiplier = np.where(grid.k_r <= params.k_max, multiplier, 0.0)
    return inverse_transform(grid.with_samples(grid.samples * multiplier), params.convention)


def apply_detector(
    grid: SpectralGrid,
    theta: float,
    params: FilterParams,
    detector: Detector | str = Detector.DIRECTIONAL,
    angular: str = "triangle",
) -> ImageGrid:
    match Detector(detector):
        case Detector.DIRECTIONAL:
            return apply_directional_filter(grid, theta, params, angular)
        case Detector.DERIVATIVE:
            return apply_directional_derivative(grid, theta, params)


def filter_bank(
    grid: SpectralGrid,
    params: FilterParams,
    thetas: Optional[list[float]] = None,
    detector: Detector | str = Detector.DIRECTIONAL,
    angular: str = "triangle",
) -> list[ImageGrid]:
    """
    Run the filter fan concurrently.

    Args:
        grid: k-space data
        params: Filter parameters; thetas default to j pi / A, j = 1..A
        thetas: Explicit directions
        detector: "directional" or the "derivative" baseline
        angular: Angular window name

    Returns:
        Filtered images in the order of thetas
    """
    _check_band(grid, params)
    thetas = params.thetas() if thetas is None else list(thetas)
    workers = max(1, min(settings.THREADS, len(thetas)))
    logger.debug("Filtering %d directions on %d threads", len(thetas), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda theta: apply_detector(grid, theta, params, detector, angular), thetas))
