"""Surfels and pixel clusters."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class Surfel:
    """
    A wavefront sample: a position in the unit square and an unoriented
    normal direction theta in [0, pi).
    """

    x: float
    y: float
    theta: float
    strength: float = 0.0
    bin: int = -1   # index of the filter direction that produced it

    def __post_init__(self):
        if self.strength < 0:
            raise ValueError(f"Surfel strength must be nonnegative, got {self.strength}")
        object.__setattr__(self, "x", min(max(float(self.x), 0.0), 1.0))
        object.__setattr__(self, "y", min(max(float(self.y), 0.0), 1.0))
        object.__setattr__(self, "theta", float(self.theta) % math.pi)

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])

    @property
    def normal(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    @property
    def tangent(self) -> np.ndarray:
        return np.array([-math.sin(self.theta), math.cos(self.theta)])


def angle_difference(a, b):
    """Distance between unoriented directions, in [0, pi/2]."""
    d = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), np.pi)
    return np.minimum(d, np.pi - d)


@dataclass(frozen=True, eq=False)
class Cluster:
    """Pixel centers connected under single linkage, tagged with the filter direction."""

    points: np.ndarray
    theta: float
    pitch: float = 1.0
    values: Optional[np.ndarray] = None   # |f| at each member

    def __post_init__(self):
        points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if points.size == 0:
            raise ValueError("Cluster must be nonempty")
        object.__setattr__(self, "points", points)
        if self.values is not None:
            values = np.asarray(self.values, dtype=float).reshape(-1)
            if len(values) != len(points):
                raise ValueError(f"Got {len(values)} values for {len(points)} cluster members")
            object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def bounding_box(self) -> tuple[float, float, float, float]:
        """(x_min, y_min, x_max, y_max)."""
        lo, hi = self.points.min(axis=0), self.points.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])
