"""
Surfel extraction from directionally filtered k-space data.

Usage:
------
    from src.wavefront import extract_surfels

    surfels = extract_surfels(grid, theta, params, mode="fraction")
"""

from .surfel import Cluster, Surfel, angle_difference
from .threshold import ThresholdMode, choose_threshold, threshold_set
from .clustering import UnionFind, cluster
from .midline import midline, subsample, subsample_indices
from .extract import (
    SurfelError,
    cluster_radius,
    extract_fan,
    extract_surfels,
    fan_surfels,
    refine_along_normal,
    sample_strength,
    signed_offset,
    spurious_fraction,
    surfel_distance_report,
    strongest_direction,
    surfels_from_image,
)
