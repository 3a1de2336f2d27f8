"""Pydantic models for analytic phantom scenes."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .curves import ParametricCurve, ellipse_curve

TEXTURE_DIGITS = 6
GEOMETRY_SAMPLES = 4096


class EllipseSpec(BaseModel):
    """A filled ellipse c * 1_Omega with semi-axes a >= b rotated by phi."""

    model_config = ConfigDict(frozen=True)

    center: tuple[float, float] = Field(..., description="Center (x0, y0) in the unit square")
    a: float = Field(..., gt=0, description="Major semi-axis")
    b: float = Field(..., gt=0, description="Minor semi-axis")
    phi: float = Field(default=0.0, description="Rotation of the major axis, radians")
    amplitude: float = Field(..., description="Jump c across the boundary")

    @model_validator(mode="before")
    @classmethod
    def _major_axis_first(cls, data):
        if isinstance(data, dict) and data.get("a") is not None and data.get("b") is not None:
            if data["a"] < data["b"]:
                data = {**data, "a": data["b"], "b": data["a"], "phi": data.get("phi", 0.0) + math.pi / 2}
        return data

    @model_validator(mode="after")
    def _inside_unit_square(self):
        if self.amplitude == 0:
            raise ValueError("Ellipse amplitude must be nonzero")
        hx, hy = self.half_extents
        cx, cy = self.center
        if not (cx - hx > 0 and cx + hx < 1 and cy - hy > 0 and cy + hy < 1):
            raise ValueError(f"Ellipse centered at {self.center} with axes ({self.a}, {self.b}) leaves the unit square")
        return self

    @property
    def half_extents(self) -> tuple[float, float]:
        c, s = math.cos(self.phi), math.sin(self.phi)
        return (
            math.sqrt((self.a * c) ** 2 + (self.b * s) ** 2),
            math.sqrt((self.a * s) ** 2 + (self.b * c) ** 2),
        )

    @property
    def kappa_range(self) -> tuple[float, float]:
        return self.b / self.a**2, self.a / self.b**2

    def curve(self) -> ParametricCurve:
        return ellipse_curve(self.center, self.a, self.b, self.phi)

    def to_local(self, points: np.ndarray) -> np.ndarray:
        """Coordinates in the ellipse's own frame (major axis along x)."""
        points = np.asarray(points, dtype=float)
        c, s = math.cos(self.phi), math.sin(self.phi)
        dx = points[..., 0] - self.center[0]
        dy = points[..., 1] - self.center[1]
        return np.stack([c * dx + s * dy, -s * dx + c * dy], axis=-1)

    def contains(self, points: np.ndarray) -> np.ndarray:
        local = self.to_local(points)
        return (local[..., 0] / self.a) ** 2 + (local[..., 1] / self.b) ** 2 < 1.0

    def boundary_samples(self, count: int = GEOMETRY_SAMPLES) -> dict[str, np.ndarray]:
        """
        Dense samples in the angle parameter.

        Returns a dict with points, outward unit normals, curvature, speed
        ds/dtau, unit-speed |gamma'''| and the parameter tau.
        """
        tau = 2 * np.pi * np.arange(count) / count
        sin_t, cos_t = np.sin(tau), np.cos(tau)
        a, b = self.a, self.b
        q = (a * sin_t) ** 2 + (b * cos_t) ** 2
        speed = np.sqrt(q)
        kappa = a * b / q**1.5
        dq = 2 * (a * a - b * b) * sin_t * cos_t
        dkappa_ds = (-1.5 * a * b * q**-2.5 * dq) / speed
        third = np.sqrt(dkappa_ds**2 + kappa**4)

        c, s = math.cos(self.phi), math.sin(self.phi)
        nu, nv = b * cos_t, a * sin_t
        norm = np.hypot(nu, nv)
        normals = np.stack([(c * nu - s * nv) / norm, (s * nu + c * nv) / norm], axis=-1)
        return {
            "tau": tau,
            "points": self.curve().position(tau),
            "normals": normals,
            "curvature": kappa,
            "speed": speed,
            "third_derivative": third,
        }

    def arclength(self) -> float:
        samples = self.boundary_samples()
        return float(np.mean(samples["speed"]) * 2 * np.pi)

    def gamma3_sup(self) -> float:
        return float(np.max(self.boundary_samples()["third_derivative"]))


class GaussianSpec(BaseModel):
    """Smooth texture term amplitude * exp(-|x - c|^2 / (2 sigma^2))."""

    model_config = ConfigDict(frozen=True)

    center: tuple[float, float] = Field(..., description="Center of the bump")
    sigma: float = Field(..., gt=0, description="Standard deviation")
    amplitude: float = Field(..., description="Peak value")

    @property
    def k_eff(self) -> float:
        """Frequency beyond which the transform is below 1e-6 of its peak."""
        return math.sqrt(2 * math.log(10**TEXTURE_DIGITS)) / self.sigma

    def values(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        r2 = (points[..., 0] - self.center[0]) ** 2 + (points[..., 1] - self.center[1]) ** 2
        return self.amplitude * np.exp(-r2 / (2 * self.sigma**2))


class PolyCurveSpec(BaseModel):
    """Closed polygon (vertex list, stored counterclockwise) filled with a constant."""

    model_config = ConfigDict(frozen=True)

    vertices: list[tuple[float, float]] = Field(..., min_length=3, description="Polygon vertices")
    amplitude: float = Field(..., description="Jump c across the boundary")

    @field_validator("vertices")
    @classmethod
    def _counterclockwise(cls, vertices):
        if len(vertices) > 3 and np.allclose(vertices[0], vertices[-1]):
            vertices = vertices[:-1]
        array = np.asarray(vertices, dtype=float)
        if np.any(array <= 0) or np.any(array >= 1):
            raise ValueError("Polygon vertices must lie strictly inside the unit square")
        if np.any(np.linalg.norm(np.diff(np.vstack([array, array[:1]]), axis=0), axis=1) == 0):
            raise ValueError("Polygon has repeated consecutive vertices")
        if _shoelace(array) < 0:
            vertices = list(reversed(vertices))
        return [tuple(map(float, v)) for v in vertices]

    @model_validator(mode="after")
    def _nonzero_amplitude(self):
        if self.amplitude == 0:
            raise ValueError("Polygon amplitude must be nonzero")
        return self

    @classmethod
    def square(cls, center: tuple[float, float], side: float, amplitude: float = 1.0) -> "PolyCurveSpec":
        cx, cy = center
        h = side / 2
        return cls(
            vertices=[(cx - h, cy - h), (cx + h, cy - h), (cx + h, cy + h), (cx - h, cy + h)],
            amplitude=amplitude,
        )

    @property
    def points(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def edges(self) -> list[tuple[np.ndarray, np.ndarray]]:
        p = self.points
        return [(p[i], p[(i + 1) % len(p)]) for i in range(len(p))]

    def area(self) -> float:
        return _shoelace(self.points)

    def perimeter(self) -> float:
        return float(sum(np.linalg.norm(b - a) for a, b in self.edges()))

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Even-odd ray casting."""
        points = np.asarray(points, dtype=float)
        x, y = points[..., 0], points[..., 1]
        inside = np.zeros(x.shape, dtype=bool)
        for a, b in self.edges():
            crosses = (a[1] > y) != (b[1] > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                x_cross = a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            inside ^= crosses & (x < x_cross)
        return inside

    def boundary_samples(self, per_edge: int = 256) -> dict[str, np.ndarray]:
        points, normals = [], []
        for a, b in self.edges():
            t = np.arange(per_edge)[:, None] / per_edge
            points.append(a + t * (b - a))
            d = (b - a) / np.linalg.norm(b - a)
            normals.append(np.tile([d[1], -d[0]], (per_edge, 1)))
        points = np.vstack(points)
        return {
            "points": points,
            "normals": np.vstack(normals),
            "curvature": np.zeros(len(points)),
        }


def _shoelace(points: np.ndarray) -> float:
    x, y = points[:, 0], points[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


class PhantomGeometry(BaseModel):
    """Derived constants of a scene (curve count, separation, curvature and contrast bounds)."""

    M: int = Field(..., description="Number of curves")
    delta: float | None = Field(default=None, description="Minimum separation; None without a pair to separate")
    kappa_low: float = Field(..., description="Lower curvature bound (0 for polygons)")
    kappa_bar: float = Field(..., description="Upper curvature bound over smooth curves")
    rho_low: float = Field(..., description="Smallest contrast |c_j|")
    rho_bar: float = Field(..., description="Largest contrast |c_j|")
    gamma3_sup: float = Field(..., description="sup of the unit-speed |gamma'''|")
    total_arclength: float = Field(..., description="Sum of curve lengths")
    arclengths: list[float] = Field(default_factory=list, description="Per-curve lengths")

    def matches(self, other: "PhantomGeometry", rtol: float = 1e-9) -> bool:
        mine, theirs = self.model_dump(), other.model_dump()
        for key, value in mine.items():
            if value is None or theirs[key] is None:
                if value is not theirs[key]:
                    return False
            elif not np.allclose(value, theirs[key], rtol=rtol, atol=0.0):
                return False
        return True


class PhantomSpec(BaseModel):
    """An analytic scene: ellipses and polygons with constant jumps plus Gaussian texture."""

    ellipses: list[EllipseSpec] = Field(default_factory=list, description="Smooth convex curves")
    texture: list[GaussianSpec] = Field(default_factory=list, description="Smooth texture bumps")
    polycurves: list[PolyCurveSpec] = Field(default_factory=list, description="Polygons")
    geometry: PhantomGeometry | None = Field(default=None, description="Derived constants")

    @model_validator(mode="after")
    def _derive_geometry(self):
        # local import: geometry scans depend on this module's types
        from .geometry import compute_geometry, check_no_crossings

        check_no_crossings(self.ellipses, self.polycurves)
        derived = compute_geometry(self)
        if derived.M > 0 and derived.delta is not None and derived.delta <= 0:
            raise ValueError("Curves touch or intersect: minimum separation is zero")
        if self.geometry is not None and not self.geometry.matches(derived):
            raise ValueError("Stored derived constants disagree with the primitives")
        self.geometry = derived
        return self

    @property
    def curve_count(self) -> int:
        return len(self.ellipses) + len(self.polycurves)

    def amplitudes(self) -> list[float]:
        return [e.amplitude for e in self.ellipses] + [p.amplitude for p in self.polycurves]

    def max_texture_bandwidth(self) -> float:
        return max((g.k_eff for g in self.texture), default=0.0)
