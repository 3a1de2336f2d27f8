"""Cubic Hermite interpolation of linked surfels."""

import logging
from dataclasses import dataclass

import numpy as np

from src.config import settings

from .polygonalize import PolygonalFigure

logger = logging.getLogger(__name__)


def h00(t):
    return t * t * (2.0 * t - 3.0) + 1.0


def h10(t):
    return t * (t * (t - 2.0) + 1.0)


def h01(t):
    return t * t * (-2.0 * t + 3.0)


def h11(t):
    return t * t * (t - 1.0)


def hermite_segment(p0, p1, m0, m1, samples: int) -> np.ndarray:
    """Points of the cubic with endpoint values p0, p1 and derivatives m0, m1, at s = k / samples, k < samples."""
    s = (np.arange(samples) / samples)[:, None]
    return h00(s) * p0 + h10(s) * m0 + h01(s) * p1 + h11(s) * m1


@dataclass(frozen=True, eq=False)
class SegmentedCurve:
    """
    Ordered vertices (first repeated at the end when closed), the unit tangent
    used at each end of every edge, and the dense interpolant.
    """

    vertices: np.ndarray
    start_tangents: np.ndarray
    end_tangents: np.ndarray
    points: np.ndarray
    closed: bool

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1


def interpolate_path(positions: np.ndarray, thetas: np.ndarray, closed: bool, samples_per_edge: int) -> SegmentedCurve:
    """
    Hermite pieces through the ordered positions. The tangent at each vertex
    is its normal rotated by pi/2, signed to follow the chord and scaled by
    the chord length.
    """
    if samples_per_edge < 1:
        raise ValueError(f"Need at least one sample per edge, got {samples_per_edge}")
    positions = np.asarray(positions, dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    if closed:
        positions = np.vstack([positions, positions[:1]])
        thetas = np.append(thetas, thetas[0])
    if len(positions) < 2:
        raise ValueError("A curve needs at least two vertices")

    tangents = np.stack([-np.sin(thetas), np.cos(thetas)], axis=-1)
    pieces, starts, ends = [], [], []
    for a in range(len(positions) - 1):
        p0, p1 = positions[a], positions[a + 1]
        chord = p1 - p0
        length = float(np.hypot(*chord))
        if length == 0:
            raise ValueError(f"Zero-length edge between vertices {a} and {a + 1}")
        t0 = tangents[a] * np.sign(np.dot(tangents[a], chord) or 1.0)
        t1 = tangents[a + 1] * np.sign(np.dot(tangents[a + 1], chord) or 1.0)
        starts.append(t0)
        ends.append(t1)
        pieces.append(hermite_segment(p0, p1, length * t0, length * t1, samples_per_edge))
    pieces.append(positions[-1:])
    return SegmentedCurve(
        vertices=positions,
        start_tangents=np.array(starts),
        end_tangents=np.array(ends),
        points=np.vstack(pieces),
        closed=closed,
    )


def hermite_interpolate(fig: PolygonalFigure, samples_per_edge: int = settings.HERMITE_SAMPLES) -> list[SegmentedCurve]:
    """Closed curves for every cycle, then open curves (with a warning) for every chain."""
    cycles, chains = fig.components()
    curves = []
    for path, closed in [(c, True) for c in cycles] + [(c, False) for c in chains]:
        if closed and len(path) < 3:
            continue
        positions = np.array([fig.vertices[i].position for i in path])
        thetas = np.array([fig.vertices[i].theta for i in path])
        curves.append(interpolate_path(positions, thetas, closed, samples_per_edge))
    if chains:
        logger.warning("Emitting %d open chains as unclosed curves", len(chains))
    return curves
