"""Closed parametric curves on [0, 2*pi)."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

PointFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ParametricCurve:
    """
    A closed curve t -> position(t), t in [0, 2*pi).

    position and velocity map an array of parameters of shape (n,)
    to points of shape (n, 2).
    """

    position: PointFunction
    velocity: PointFunction

    def reversed(self) -> "ParametricCurve":
        """Same trace, opposite orientation."""
        return ParametricCurve(
            position=lambda t: self.position(-np.asarray(t)),
            velocity=lambda t: -self.velocity(-np.asarray(t)),
        )

    def sample(self, nodes: int) -> tuple[np.ndarray, np.ndarray]:
        t = 2 * np.pi * np.arange(nodes) / nodes
        return self.position(t), self.velocity(t)

    def signed_area(self, nodes: int = 512) -> float:
        """Continuous shoelace 1/2 * integral (x y' - y x') dt by the trapezoid rule."""
        points, tangents = self.sample(nodes)
        integrand = points[:, 0] * tangents[:, 1] - points[:, 1] * tangents[:, 0]
        return float(0.5 * np.sum(integrand) * 2 * np.pi / nodes)


def ellipse_curve(
    center: tuple[float, float], a: float, b: float, phi: float = 0.0
) -> ParametricCurve:
    """Counterclockwise ellipse x0 + R(phi) (a cos t, b sin t)."""
    cx, cy = center
    c, s = np.cos(phi), np.sin(phi)

    def position(t):
        t = np.asarray(t, dtype=float)
        u, v = a * np.cos(t), b * np.sin(t)
        return np.stack([cx + c * u - s * v, cy + s * u + c * v], axis=-1)

    def velocity(t):
        t = np.asarray(t, dtype=float)
        du, dv = -a * np.sin(t), b * np.cos(t)
        return np.stack([c * du - s * dv, s * du + c * dv], axis=-1)

    return ParametricCurve(position=position, velocity=velocity)


def circle_curve(center: tuple[float, float], radius: float) -> ParametricCurve:
    return ellipse_curve(center, radius, radius, 0.0)
