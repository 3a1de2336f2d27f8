"""
Curve recovery from pooled surfels.

Usage:
------
    from src.segmentation import segment

    curves = segment(grid, params, constants)
"""

from .bounds import NoiseBounds
from .dedup import merge_surfels, thin_surfels
from .polygonalize import PolygonalFigure, polygonalize
from .hermite import SegmentedCurve, hermite_interpolate, hermite_segment, interpolate_path
from .segment import (
    Segmentation,
    hausdorff_to_spec,
    match_curves,
    run_segmentation,
    segment,
    segment_surfels,
)
