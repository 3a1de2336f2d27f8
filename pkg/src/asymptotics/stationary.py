"""
Stationary-phase expansion of curve transforms.

For |k| large the transform of c * 1_Omega concentrates on the two boundary
points where the outward normal is +k/|k| and -k/|k|. Each contributes

    c * sqrt(2 pi) / |k|^(3/2) * kappa^(-1/2) * exp(i (k.gamma -/+ 3 pi / 4))

with the minus sign at the point whose normal is +k/|k|. The phase offsets
are fixed by the disk, whose exact transform 2 pi R J1(|k| R) / |k| has the
first-order asymptotic 2 sqrt(2 pi R) |k|^(-3/2) cos(|k| R - 3 pi / 4).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.phantom import EllipseSpec, PhantomSpec, ellipse_ft

logger = logging.getLogger(__name__)

PHASE_OFFSET = 0.75 * math.pi
ARCLENGTH_NODES = 64


@dataclass(frozen=True, eq=False)
class StationaryPoint:
    """Boundary point where the tangent is orthogonal to the query direction."""

    curve_id: int
    t: float                # unit-speed arclength from the parameter origin
    tau: float              # angle parameter of (a cos tau, b sin tau)
    position: np.ndarray
    curvature: float
    normal: np.ndarray      # outward unit normal
    tangent: np.ndarray     # counterclockwise unit tangent


def _unit(direction) -> np.ndarray:
    direction = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(direction, axis=-1, keepdims=True)
    if np.any(norm == 0):
        raise ValueError("Direction must be nonzero")
    return direction / norm


def _support(e: EllipseSpec, unit: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Boundary point with outward normal `unit` and its curvature, vectorized."""
    c, s = math.cos(e.phi), math.sin(e.phi)
    n1 = c * unit[..., 0] + s * unit[..., 1]
    n2 = -s * unit[..., 0] + c * unit[..., 1]
    q = (e.a * n1) ** 2 + (e.b * n2) ** 2
    root = np.sqrt(q)
    u, v = e.a**2 * n1 / root, e.b**2 * n2 / root
    position = np.stack([e.center[0] + c * u - s * v, e.center[1] + s * u + c * v], axis=-1)
    curvature = q**1.5 / (e.a * e.b) ** 2
    return position, curvature


def _arclength_to(e: EllipseSpec, tau: float) -> float:
    """Arclength from tau = 0 counterclockwise, by Gauss-Legendre quadrature."""
    tau = tau % (2 * math.pi)
    if tau == 0:
        return 0.0
    nodes, weights = np.polynomial.legendre.leggauss(ARCLENGTH_NODES)
    x = 0.5 * tau * (nodes + 1)
    speed = np.sqrt((e.a * np.sin(x)) ** 2 + (e.b * np.cos(x)) ** 2)
    return float(0.5 * tau * np.sum(weights * speed))


def _point(e: EllipseSpec, normal: np.ndarray, curve_id: int) -> StationaryPoint:
    position, curvature = _support(e, normal)
    local = e.to_local(position)
    tau = math.atan2(local[1] / e.b, local[0] / e.a)
    velocity = e.curve().velocity(np.array([tau]))[0]
    return StationaryPoint(
        curve_id=curve_id,
        t=_arclength_to(e, tau),
        tau=tau % (2 * math.pi),
        position=position,
        curvature=float(curvature),
        normal=normal,
        tangent=velocity / np.linalg.norm(velocity),
    )


def stationary_points(
    curve: EllipseSpec, direction, curve_id: int = 0
) -> tuple[StationaryPoint, StationaryPoint]:
    """
    The two points where the ellipse's tangent is orthogonal to `direction`.

    Returns:
        (point with outward normal +direction, point with outward normal -direction)
    """
    unit = _unit(direction)
    if unit.shape != (2,):
        raise ValueError(f"Direction must be a single 2-vector, got shape {unit.shape}")
    return _point(curve, unit, curve_id), _point(curve, -unit, curve_id)


def leading_order_ft(spec: PhantomSpec, k, k_tex: float | None = None) -> complex | np.ndarray:
    """
    Two-point stationary-phase approximation of the curve part of the scene.

    Texture is ignored (it is negligible beyond k_tex). Raises for scenes
    with polygons, where the curvature vanishes.
    """
    if spec.polycurves:
        raise ValueError("Leading-order asymptotics need curvature bounded below; scene has polygons")
    k = np.asarray(k, dtype=float)
    scalar = k.ndim == 1
    k_abs = np.hypot(k[..., 0], k[..., 1])
    floor = 0.0 if k_tex is None else k_tex
    if np.any(k_abs <= 0) or np.any(k_abs < floor):
        raise ValueError(f"Leading-order asymptotics require |k| >= k_tex ({floor}) and k != 0")

    unit = k / k_abs[..., None]
    total = np.zeros(k.shape[:-1], dtype=complex)
    for e in spec.ellipses:
        plus, kappa_plus = _support(e, unit)
        minus, kappa_minus = _support(e, -unit)
        phase_plus = np.sum(k * plus, axis=-1) - PHASE_OFFSET
        phase_minus = np.sum(k * minus, axis=-1) + PHASE_OFFSET
        total += e.amplitude * (
            np.exp(1j * phase_plus) / np.sqrt(kappa_plus)
            + np.exp(1j * phase_minus) / np.sqrt(kappa_minus)
        )
    total *= math.sqrt(2 * math.pi) / k_abs**1.5
    return complex(total) if scalar else total


def curve_ft(spec: PhantomSpec, k) -> complex | np.ndarray:
    """Exact transform of the ellipses alone (no texture)."""
    k = np.asarray(k, dtype=float)
    total = np.zeros(k.shape[:-1], dtype=complex)
    for e in spec.ellipses:
        total = total + ellipse_ft(e, k)
    return complex(total) if k.ndim == 1 else total


@dataclass(frozen=True)
class ErrorSample:
    k: float
    exact: complex
    leading: complex

    @property
    def error(self) -> float:
        return abs(self.exact - self.leading)

    @property
    def scaled_error(self) -> float:
        """|exact - leading| * |k|^2, the quantity bounded by C_geo."""
        return self.error * self.k**2


def asymptotic_error_report(spec: PhantomSpec, direction, k_values) -> list[ErrorSample]:
    """Exact vs leading-order transform along one direction."""
    unit = _unit(direction)
    k_values = np.asarray(k_values, dtype=float)
    frequencies = k_values[:, None] * unit[None, :]
    exact = curve_ft(spec, frequencies)
    leading = leading_order_ft(spec, frequencies)
    return [ErrorSample(float(r), complex(e), complex(l)) for r, e, l in zip(k_values, exact, leading)]


def remainder_decay_slope(
    spec: PhantomSpec,
    direction,
    k_min: float,
    k_max: float,
    windows: int = 8,
    per_window: int = 256,
) -> float:
    """
    Log-log slope of the windowed maximum of |exact - leading| * |k|^(3/2).

    The maximum over each window removes the oscillation of the remainder,
    so windows should span several periods (2 pi / diameter).
    """
    if not 0 < k_min < k_max:
        raise ValueError(f"Need 0 < k_min < k_max, got {k_min}, {k_max}")
    if windows < 2:
        raise ValueError(f"Need at least 2 windows, got {windows}")
    edges = np.geomspace(k_min, k_max, windows + 1)
    centers, peaks = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        samples = asymptotic_error_report(spec, direction, np.linspace(lo, hi, per_window))
        peaks.append(max(s.error * s.k**1.5 for s in samples))
        centers.append(math.sqrt(lo * hi))
    slope, _ = np.polyfit(np.log(centers), np.log(peaks), 1)
    logger.debug("Remainder slope over [%.1f, %.1f]: %.3f", k_min, k_max, slope)
    return float(slope)
