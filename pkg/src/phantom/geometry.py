"""Brute-force geometric scans behind PhantomGeometry."""

import itertools
import logging
import math

import numpy as np
from scipy.spatial import cKDTree

from .specs import EllipseSpec, PhantomGeometry, PolyCurveSpec

logger = logging.getLogger(__name__)

SEPARATION_SAMPLES = 1024


def _orientation(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def segments_intersect(first: PolyCurveSpec, second: PolyCurveSpec) -> bool:
    """True when any edge of one polygon meets any edge of the other, touching included."""
    p = np.asarray([a for a, _ in first.edges()])[:, None, :]
    r = np.asarray([b for _, b in first.edges()])[:, None, :]
    q = np.asarray([a for a, _ in second.edges()])[None, :, :]
    s = np.asarray([b for _, b in second.edges()])[None, :, :]
    d1, d2 = _orientation(q, s, p), _orientation(q, s, r)
    d3, d4 = _orientation(p, r, q), _orientation(p, r, s)
    straddle = (d1 * d2 <= 0) & (d3 * d4 <= 0)
    collinear = (d1 == 0) & (d2 == 0) & (d3 == 0) & (d4 == 0)
    # collinear pairs only meet when their bounding boxes overlap
    lo, hi = np.minimum(p, r), np.maximum(p, r)
    other_lo, other_hi = np.minimum(q, s), np.maximum(q, s)
    overlap = np.all((lo <= other_hi) & (other_lo <= hi), axis=-1)
    return bool(np.any(np.where(collinear, overlap, straddle)))


def _sides_mixed(region, points: np.ndarray) -> bool:
    inside = region.contains(points)
    return bool(inside.any() and not inside.all())


def check_no_crossings(ellipses: list[EllipseSpec], polycurves: list[PolyCurveSpec]) -> None:
    """Reject curve pairs whose boundaries cross (samples on both sides of the other)."""
    for i, j in itertools.combinations(range(len(ellipses)), 2):
        if _sides_mixed(ellipses[j], ellipses[i].boundary_samples(SEPARATION_SAMPLES)["points"]):
            raise ValueError(f"Ellipses {i} and {j} intersect")
    for i, j in itertools.combinations(range(len(polycurves)), 2):
        if segments_intersect(polycurves[i], polycurves[j]):
            raise ValueError(f"Polygons {i} and {j} intersect")
    for i, ellipse in enumerate(ellipses):
        ellipse_points = ellipse.boundary_samples(SEPARATION_SAMPLES)["points"]
        for j, polygon in enumerate(polycurves):
            polygon_points = polygon.boundary_samples()["points"]
            if _sides_mixed(ellipse, polygon_points) or _sides_mixed(polygon, ellipse_points):
                raise ValueError(f"Ellipse {i} and polygon {j} intersect")


def _same_curve_separation(ellipse: EllipseSpec, kappa_bar: float) -> float:
    """Min distance between points more than (pi/2)/kappa_bar apart in arclength."""
    samples = ellipse.boundary_samples(SEPARATION_SAMPLES)
    step = samples["speed"] * 2 * np.pi / SEPARATION_SAMPLES
    s = np.concatenate([[0.0], np.cumsum(step)[:-1]])
    length = float(np.sum(step))
    gap = np.abs(s[:, None] - s[None, :])
    gap = np.minimum(gap, length - gap)
    points = samples["points"]
    distances = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    far = gap > (math.pi / 2) / kappa_bar
    if not far.any():
        return math.inf
    return float(distances[far].min())


def compute_geometry(spec) -> PhantomGeometry:
    """Derive M, delta, curvature and contrast bounds, sup|gamma'''| and arclengths."""
    curves: list[EllipseSpec | PolyCurveSpec] = [*spec.ellipses, *spec.polycurves]
    if not curves:
        return PhantomGeometry(
            M=0, delta=None, kappa_low=0.0, kappa_bar=0.0, rho_low=0.0, rho_bar=0.0,
            gamma3_sup=0.0, total_arclength=0.0, arclengths=[],
        )

    kappa_low = min((e.kappa_range[0] for e in spec.ellipses), default=math.inf)
    if spec.polycurves:
        kappa_low = 0.0
    kappa_bar = max((e.kappa_range[1] for e in spec.ellipses), default=0.0)

    magnitudes = [abs(c) for c in spec.amplitudes()]
    arclengths = [e.arclength() for e in spec.ellipses] + [p.perimeter() for p in spec.polycurves]
    gamma3 = max((e.gamma3_sup() for e in spec.ellipses), default=0.0)

    delta = math.inf
    trees = [cKDTree(c.boundary_samples()["points"]) for c in curves]
    for i, j in itertools.combinations(range(len(curves)), 2):
        d, _ = trees[i].query(trees[j].data, k=1)
        delta = min(delta, float(np.min(d)))
    if kappa_bar > 0:
        for ellipse in spec.ellipses:
            delta = min(delta, _same_curve_separation(ellipse, kappa_bar))

    logger.debug("Geometry: M=%d delta=%s kappa=[%s, %s]", len(curves), delta, kappa_low, kappa_bar)
    return PhantomGeometry(
        M=len(curves),
        delta=None if math.isinf(delta) else delta,
        kappa_low=kappa_low,
        kappa_bar=kappa_bar,
        rho_low=min(magnitudes),
        rho_bar=max(magnitudes),
        gamma3_sup=gamma3,
        total_arclength=float(sum(arclengths)),
        arclengths=arclengths,
    )


def nearest_boundary(spec, points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Distance from each point to the nearest curve sample, the unoriented
    normal angle (mod pi) there, and the index of that curve.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    curves = [*spec.ellipses, *spec.polycurves]
    if not curves:
        raise ValueError("Scene has no curves")
    all_points, all_normals, owners = [], [], []
    for index, curve in enumerate(curves):
        samples = curve.boundary_samples()
        all_points.append(samples["points"])
        all_normals.append(samples["normals"])
        owners.append(np.full(len(samples["points"]), index))
    tree = cKDTree(np.vstack(all_points))
    normals = np.vstack(all_normals)
    owner = np.concatenate(owners)
    distance, nearest = tree.query(points, k=1)
    angle = np.mod(np.arctan2(normals[nearest, 1], normals[nearest, 0]), np.pi)
    return distance, angle, owner[nearest]
