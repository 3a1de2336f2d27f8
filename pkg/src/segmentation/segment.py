"""
Curve recovery from k-space data: filter fan, surfel pooling, linking and
Hermite interpolation.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from src.config import settings
from src.filters import FilterConstants, FilterParams
from src.phantom import PhantomSpec
from src.spectral import SpectralGrid
from src.wavefront import Surfel, ThresholdMode, extract_fan

from .bounds import NoiseBounds
from .dedup import merge_surfels, thin_surfels
from .hermite import SegmentedCurve, hermite_interpolate
from .polygonalize import PolygonalFigure, polygonalize

logger = logging.getLogger(__name__)


@dataclass
class Segmentation:
    """Every intermediate product of one segmentation run."""

    surfels: list[Surfel]
    merged: list[Surfel]
    figure: PolygonalFigure
    curves: list[SegmentedCurve]
    bounds: NoiseBounds


def segment_surfels(
    surfels: list[Surfel],
    bounds: NoiseBounds,
    alpha: float,
    kappa_bar: float = 0.0,
    delta: Optional[float] = None,
    samples_per_edge: int = settings.HERMITE_SAMPLES,
    convex: bool = False,
) -> Segmentation:
    """Merge, optionally thin, link and interpolate pooled surfels; `convex` turns on the monotone-normal rule."""
    merged = merge_surfels(surfels, bounds.zeta, alpha)
    if bounds.strict:
        if not bounds.check(delta, kappa_bar):
            logger.warning(
                "Separation conditions fail: delta=%s, zeta=%.4g, xi=%.4g, eps=%.4g", delta, bounds.zeta, bounds.xi, bounds.eps
            )
        merged = thin_surfels(merged, bounds.min_spacing)
    figure = polygonalize(merged, bounds, kappa_bar, convex)
    curves = hermite_interpolate(figure, samples_per_edge)
    logger.info(
        "Segmented %d surfels (%d after merging) into %d curves", len(surfels), len(merged), len(curves)
    )
    return Segmentation(surfels=surfels, merged=merged, figure=figure, curves=curves, bounds=bounds)


def run_segmentation(
    grid: SpectralGrid,
    params: FilterParams,
    constants: Optional[FilterConstants] = None,
    *,
    bounds: Optional[NoiseBounds] = None,
    delta: Optional[float] = None,
    strict: bool = False,
    mode: ThresholdMode | str = ThresholdMode.THEORY,
    fraction: float = settings.TAU_FRACTION,
    samples_per_edge: int = settings.HERMITE_SAMPLES,
) -> Segmentation:
    """
    Extract surfels for theta = j pi / A, j = 1..A, and segment the pool.

    Args:
        grid: k-space data
        params: Filter parameters (alpha, A, curvature bounds)
        constants: Theory constants, used for tau, the linkage radius and zeta
        bounds: Noise bounds; derived from params and constants when omitted
        delta: Curve separation, only needed for the strict checks
        strict: Enforce the noisy separation conditions and minimum spacing
        mode: Threshold policy
        fraction: Fraction of the peak for the empirical threshold
        samples_per_edge: Dense points per Hermite piece

    Returns:
        Segmentation with surfels, merged surfels, figure and curves
    """
    if bounds is None:
        bounds = NoiseBounds.from_constants(params, grid.m, constants, strict=strict)
    surfels = extract_fan(grid, params, constants=constants, mode=mode, fraction=fraction)
    return segment_surfels(
        surfels, bounds, params.alpha, params.kappa_bar, delta, samples_per_edge, convex=params.kappa_low > 0
    )


def segment(
    grid: SpectralGrid,
    params: FilterParams,
    constants: Optional[FilterConstants] = None,
    **kwargs,
) -> list[SegmentedCurve]:
    """Curves of discontinuity recovered from k-space data."""
    return run_segmentation(grid, params, constants, **kwargs).curves


def hausdorff_to_spec(curve: SegmentedCurve, spec: PhantomSpec) -> tuple[int, float]:
    """Closest true curve (index over ellipses then polygons) and the Hausdorff distance to it."""
    truth = [*spec.ellipses, *spec.polycurves]
    if not truth:
        raise ValueError("Scene has no curves to match against")
    best = (-1, np.inf)
    for index, true_curve in enumerate(truth):
        samples = true_curve.boundary_samples()["points"]
        distance = max(directed_hausdorff(curve.points, samples)[0], directed_hausdorff(samples, curve.points)[0])
        if distance < best[1]:
            best = (index, float(distance))
    return best


def match_curves(curves: list[SegmentedCurve], spec: PhantomSpec) -> list[tuple[int, float]]:
    """hausdorff_to_spec for every curve."""
    return [hausdorff_to_spec(c, spec) for c in curves]
