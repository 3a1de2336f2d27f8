"""Merging and thinning of pooled surfels."""

import logging
import math

import numpy as np
from scipy.spatial import cKDTree

from src.wavefront import Surfel, angle_difference

logger = logging.getLogger(__name__)


def _strength_order(surfels: list[Surfel]) -> list[int]:
    return sorted(range(len(surfels)), key=lambda i: (-surfels[i].strength, i))


def merge_surfels(surfels: list[Surfel], zeta: float, alpha: float) -> list[Surfel]:
    """
    Collapse duplicates from overlapping directions.

    In decreasing strength, each unmerged surfel absorbs the unmerged
    surfels within zeta whose angle differs by less than 2 alpha. The merge
    is not transitive. Positions are strength-weighted centroids and angles
    are averaged on the doubled circle.
    """
    if not surfels or zeta <= 0:
        return list(surfels)
    positions = np.array([s.position for s in surfels])
    tree = cKDTree(positions)
    merged_into = np.full(len(surfels), -1)
    result = []
    for seed in _strength_order(surfels):
        if merged_into[seed] >= 0:
            continue
        group = [
            j for j in tree.query_ball_point(positions[seed], zeta)
            if merged_into[j] < 0 and angle_difference(surfels[j].theta, surfels[seed].theta) < 2 * alpha
        ]
        merged_into[group] = len(result)
        members = [surfels[j] for j in group]
        weights = np.array([s.strength for s in members])
        if weights.sum() <= 0:
            weights = np.ones(len(members))
        centroid = np.average(positions[group], axis=0, weights=weights)
        doubled = np.array([2 * s.theta for s in members])
        theta = 0.5 * math.atan2(np.dot(weights, np.sin(doubled)), np.dot(weights, np.cos(doubled)))
        result.append(Surfel(centroid[0], centroid[1], theta, surfels[seed].strength, surfels[seed].bin))
    logger.debug("Merged %d surfels into %d", len(surfels), len(result))
    return result


def thin_surfels(surfels: list[Surfel], min_spacing: float) -> list[Surfel]:
    """Drop weaker surfels closer than min_spacing to a kept one; kept surfels stay in input order."""
    if not surfels or min_spacing <= 0:
        return list(surfels)
    positions = np.array([s.position for s in surfels])
    tree = cKDTree(positions)
    keep = np.zeros(len(surfels), dtype=bool)
    removed = np.zeros(len(surfels), dtype=bool)
    for i in _strength_order(surfels):
        if removed[i]:
            continue
        keep[i] = True
        for j in tree.query_ball_point(positions[i], min_spacing):
            if not keep[j] and np.hypot(*(positions[j] - positions[i])) < min_spacing:
                removed[j] = True
    logger.debug("Thinned %d surfels to %d at spacing %.4g", len(surfels), int(keep.sum()), min_spacing)
    return [s for s, k in zip(surfels, keep) if k]
