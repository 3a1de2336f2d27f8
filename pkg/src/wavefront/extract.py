"""
Surfel extraction for one filter direction and for the whole fan.

filter -> threshold -> cluster -> ridge midline -> refine along the normal
-> keep where this direction is the strongest -> refine the angle -> subsample
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.ndimage import map_coordinates

from src.config import settings
from src.filters import Detector, FilterConstants, FilterParams, apply_detector, filter_bank
from src.phantom import PhantomSpec, nearest_boundary
from src.spectral import ImageGrid, SpectralGrid

from .clustering import cluster
from .midline import midline, subsample_indices
from .surfel import Surfel, angle_difference
from .threshold import ThresholdMode, choose_threshold

logger = logging.getLogger(__name__)

SUPPRESSION_RTOL = 1e-9
SAME_DIRECTION_ATOL = 1e-12

Rival = tuple[float, ImageGrid]   # (filter direction, its filtered image)


def cluster_radius(constants: Optional[FilterConstants], m: int) -> float:
    """max(D, CLUSTER_MIN_PX pixels), clamped to CLUSTER_MAX_PX pixels."""
    pixel = 1.0 / 2**m
    resolution = 0.0
    if constants is not None and constants.resolution_D is not None and math.isfinite(constants.resolution_D):
        resolution = constants.resolution_D
    radius = max(resolution, settings.CLUSTER_MIN_PX * pixel)
    if radius > settings.CLUSTER_MAX_PX * pixel:
        logger.warning(
            "Resolution D = %.4g exceeds %.1f px; clamping the linkage radius", radius, settings.CLUSTER_MAX_PX
        )
        radius = settings.CLUSTER_MAX_PX * pixel
    return radius


def sample_strength(image: ImageGrid, positions: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of |f| at arbitrary points of the unit square."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    coords = positions.T * image.side - 0.5
    return map_coordinates(image.magnitude, coords, order=1, mode="nearest")


def signed_offset(a, b):
    """a - b for unoriented directions, wrapped to [-pi/2, pi/2)."""
    return np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float) + np.pi / 2, np.pi) - np.pi / 2


def _parabola_peak(left, centre, right, d1, d2):
    """
    Vertex of the parabola through (-d1, left), (0, centre), (d2, right),
    clamped to [-d1/2, d2/2]; 0 where the samples are not concave.
    """
    left, centre, right = (np.asarray(v, dtype=float) for v in (left, centre, right))
    denominator = d1 * d2 * (d1 + d2)
    a = (d2 * (left - centre) + d1 * (right - centre)) / denominator
    b = (d1**2 * (right - centre) - d2**2 * (left - centre)) / denominator
    concave = a < 0
    peak = np.divide(-b, 2 * a, out=np.zeros_like(a), where=concave)
    return np.clip(peak, -d1 / 2, d2 / 2)


def refine_along_normal(image: ImageGrid, points: np.ndarray, theta: float) -> np.ndarray:
    """Move each point to the peak of |f| along the normal, at most half a pixel."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) == 0:
        return points
    step = image.pitch * np.array([math.cos(theta), math.sin(theta)])
    before = sample_strength(image, points - step)
    here = sample_strength(image, points)
    after = sample_strength(image, points + step)
    shift = _parabola_peak(before, here, after, 1.0, 1.0)
    return points + shift[:, None] * step


def strongest_direction(
    image: ImageGrid, theta: float, points: np.ndarray, rivals: Optional[list[Rival]] = None
) -> tuple[np.ndarray, np.ndarray]:
    """
    Which points this direction wins, and a refined normal angle for each.

    A point is kept when |f_theta| there is at least |f| of every rival
    direction. The angle is the peak of a parabola through the responses of
    the nearest rival on either side of theta; without both neighbours it
    stays theta.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    keep = np.ones(len(points), dtype=bool)
    angles = np.full(len(points), float(theta))
    rivals = [
        (float(signed_offset(other, theta)), other_image)
        for other, other_image in (rivals or [])
        if abs(float(signed_offset(other, theta))) > SAME_DIRECTION_ATOL
    ]
    if not rivals or len(points) == 0:
        return keep, angles

    own = sample_strength(image, points)
    responses = {offset: sample_strength(other_image, points) for offset, other_image in rivals}
    strongest = np.max(list(responses.values()), axis=0)
    keep = own >= strongest * (1 - SUPPRESSION_RTOL)

    below = [offset for offset in responses if offset < 0]
    above = [offset for offset in responses if offset > 0]
    if below and above:
        d1, d2 = -max(below), min(above)
        angles = theta + _parabola_peak(responses[max(below)], own, responses[min(above)], d1, d2)
    return keep, angles


def surfels_from_image(
    image: ImageGrid,
    theta: float,
    tau: float,
    radius: float,
    eps: float,
    bin_index: int = -1,
    rivals: Optional[list[Rival]] = None,
) -> list[Surfel]:
    """
    Threshold, cluster, take ridge midlines and subsample one filtered image.

    With rivals, a midline point survives only where this direction gives
    the strongest response, and its angle is refined between directions.
    """
    if not tau > 0:
        raise ValueError(f"Threshold must be positive, got {tau}")
    mask = image.magnitude >= tau
    points = image.points[mask]
    if len(points) == 0:
        return []
    surfels = []
    for c in cluster(points, radius, theta, image.pitch, image.magnitude[mask]):
        ridge = refine_along_normal(image, midline(c, theta), theta)
        keep, angles = strongest_direction(image, theta, ridge, rivals)
        ridge, angles = ridge[keep], angles[keep]
        kept = subsample_indices(ridge, eps) if len(ridge) else []
        strengths = sample_strength(image, ridge[kept])
        surfels.extend(
            Surfel(p[0], p[1], a, float(s), bin_index) for p, a, s in zip(ridge[kept], angles[kept], strengths)
        )
    logger.debug("theta=%.4f: %d pixels above %.4g, %d surfels", theta, len(points), tau, len(surfels))
    return surfels


def fan_surfels(
    thetas: list[float],
    images: list[ImageGrid],
    thresholds: list[float],
    radius: float,
    eps: Optional[float] = None,
    suppress: bool = True,
) -> list[Surfel]:
    """
    Surfels of every direction of a filtered fan, pooled in theta order.

    Each image's rivals are the other images of the fan; bin indices follow
    the order of `thetas`. Directions with an infinite threshold give none.
    """
    if not len(thetas) == len(images) == len(thresholds):
        raise ValueError(f"Got {len(thetas)} directions, {len(images)} images and {len(thresholds)} thresholds")
    fan = list(zip(thetas, images))
    workers = max(1, min(settings.THREADS, len(fan)))

    def run(index: int) -> list[Surfel]:
        theta, image = fan[index]
        tau = thresholds[index]
        if not math.isfinite(tau):
            return []
        rivals = [other for j, other in enumerate(fan) if j != index] if suppress else None
        spacing = image.pitch if eps is None else eps
        return surfels_from_image(image, theta, tau, radius, spacing, index, rivals)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        per_theta = list(pool.map(run, range(len(fan))))
    pooled = [s for batch in per_theta for s in batch]
    logger.info("Extracted %d surfels over %d directions", len(pooled), len(fan))
    return pooled


def extract_surfels(
    grid: SpectralGrid,
    theta: float,
    params: FilterParams,
    tau: Optional[float] = None,
    radius: Optional[float] = None,
    eps: Optional[float] = None,
    *,
    constants: Optional[FilterConstants] = None,
    mode: ThresholdMode | str = ThresholdMode.THEORY,
    fraction: float = settings.TAU_FRACTION,
    detector: Detector | str = Detector.DIRECTIONAL,
    bin_index: int = -1,
    suppress: bool = True,
) -> list[Surfel]:
    """
    Surfels approximating the wavefront of the data in direction theta.

    Args:
        grid: k-space samples
        theta: Filter direction (the expected edge normal)
        params: Filter parameters
        tau: Threshold; chosen by `mode` when omitted
        radius: Linkage radius; max(D, 1.5 px) clamped to 4 px when omitted
        eps: Minimum spacing of midline samples; one pixel when omitted
        constants: Theory constants for the threshold and radius defaults
        mode: Threshold policy used when tau is omitted
        fraction: Fraction of the peak for the empirical threshold
        detector: Directional filter or derivative baseline
        bin_index: Recorded on every surfel
        suppress: Compare against theta +- pi / A and keep only points where theta responds most

    Returns:
        Surfels ordered by cluster, then along each midline
    """
    image = apply_detector(grid, theta, params, detector)
    if tau is None:
        tau = choose_threshold(image, mode, constants, fraction, scale=params.theory_scale)
    if radius is None:
        radius = cluster_radius(constants, grid.m)
    if eps is None:
        eps = image.pitch
    if not math.isfinite(tau):
        return []
    rivals = None
    if suppress:
        step = math.pi / params.num_angles
        rivals = [(other, apply_detector(grid, other, params, detector)) for other in (theta - step, theta + step)]
    return surfels_from_image(image, theta, tau, radius, eps, bin_index, rivals)


def extract_fan(
    grid: SpectralGrid,
    params: FilterParams,
    thetas: Optional[list[float]] = None,
    *,
    constants: Optional[FilterConstants] = None,
    mode: ThresholdMode | str = ThresholdMode.THEORY,
    fraction: float = settings.TAU_FRACTION,
    absolute: Optional[float] = None,
    detector: Detector | str = Detector.DIRECTIONAL,
    radius: Optional[float] = None,
    eps: Optional[float] = None,
    suppress: bool = True,
) -> list[Surfel]:
    """Filter the fan once, threshold each image and pool the surfels in theta order."""
    thetas = params.thetas() if thetas is None else list(thetas)
    images = filter_bank(grid, params, thetas, detector)
    thresholds = [choose_threshold(im, mode, constants, fraction, absolute, params.theory_scale) for im in images]
    if radius is None:
        radius = cluster_radius(constants, grid.m)
    return fan_surfels(thetas, images, thresholds, radius, eps, suppress)


@dataclass(frozen=True)
class SurfelError:
    distance: float
    angle_error: float
    curve: int


def surfel_distance_report(surfels: list[Surfel], spec: PhantomSpec) -> list[SurfelError]:
    """Distance to the nearest analytic boundary sample and the normal-angle error there."""
    if not surfels:
        return []
    positions = np.array([s.position for s in surfels])
    distance, normal_angle, owner = nearest_boundary(spec, positions)
    errors = angle_difference([s.theta for s in surfels], normal_angle)
    return [SurfelError(float(d), float(e), int(o)) for d, e, o in zip(distance, errors, owner)]


def spurious_fraction(report: list[SurfelError], max_distance: float) -> float:
    """Share of surfels farther than max_distance from every curve."""
    if not report:
        return 0.0
    return sum(r.distance > max_distance for r in report) / len(report)
