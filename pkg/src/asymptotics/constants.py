"""Geometric constants bounding the stationary-phase remainder."""

import math

from pydantic import BaseModel, Field

from src.phantom import PhantomSpec


class GeometryConstants(BaseModel):
    """C_geo and the scene quantities it is built from."""

    C_geo: float = Field(..., gt=0, description="Bound on |k|^2 times the remainder of the two-point expansion")
    M: int = Field(..., description="Number of curves")
    rho_bar: float = Field(..., description="Largest contrast")
    kappa_low: float = Field(..., description="Lower curvature bound")
    kappa_bar: float = Field(..., description="Upper curvature bound")
    gamma3_sup: float = Field(..., description="sup of the unit-speed |gamma'''|")
    arclengths: list[float] = Field(default_factory=list, description="Per-curve lengths")


def geometry_constant(spec: PhantomSpec) -> GeometryConstants:
    """
    M rho_bar (4 + 8 kb / (pi kl) + 2 sqrt(2 kb / kl)) + 3 rho_bar gamma3 / kl * sum of arclengths.

    Raises:
        ValueError: if the scene has no curves or its curvature is not bounded below
    """
    g = spec.geometry
    if g is None or g.M == 0:
        raise ValueError("C_geo needs at least one curve")
    if g.kappa_low <= 0:
        raise ValueError("C_geo is singular for kappa_low = 0 (polygonal scene)")
    ratio = g.kappa_bar / g.kappa_low
    point_terms = g.M * g.rho_bar * (4 + 8 * ratio / math.pi + 2 * math.sqrt(2 * ratio))
    arc_terms = 3 * g.rho_bar * g.gamma3_sup / g.kappa_low * g.total_arclength
    return GeometryConstants(
        C_geo=point_terms + arc_terms,
        M=g.M,
        rho_bar=g.rho_bar,
        kappa_low=g.kappa_low,
        kappa_bar=g.kappa_bar,
        gamma3_sup=g.gamma3_sup,
        arclengths=list(g.arclengths),
    )


def arc_length_between_angles(kappa_low: float, kappa_bar: float, delta_theta: float) -> tuple[float, float]:
    """Bounds on the arclength between two points whose normals differ by delta_theta."""
    if not 0 < kappa_low <= kappa_bar:
        raise ValueError(f"Need 0 < kappa_low <= kappa_bar, got {kappa_low}, {kappa_bar}")
    if delta_theta < 0:
        raise ValueError(f"Angle difference must be nonnegative, got {delta_theta}")
    return delta_theta / kappa_bar, delta_theta / kappa_low
