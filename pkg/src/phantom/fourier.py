"""
Exact continuous Fourier transforms of phantom primitives.

Convention: f_hat(k) = integral of exp(i k.x) f(x) dx. Every function
accepts a single frequency (k1, k2) or an array of shape (..., 2).
"""

import logging

import numpy as np

from src.spectral import SpectralGrid, make_grid

from .bessel import j1_over_x
from .curves import ParametricCurve
from .specs import EllipseSpec, GaussianSpec, PhantomSpec, PolyCurveSpec

logger = logging.getLogger(__name__)

MIN_NODES = 16
PARALLEL_TOLERANCE = 1e-12


def _as_k(k) -> tuple[np.ndarray, bool]:
    k = np.asarray(k, dtype=float)
    if k.shape[-1] != 2:
        raise ValueError(f"Frequencies must have a trailing axis of length 2, got shape {k.shape}")
    return k, k.ndim == 1


def _finish(values: np.ndarray, scalar: bool):
    return complex(values) if scalar else values


def ellipse_ft(e: EllipseSpec, k) -> complex | np.ndarray:
    """c * 2 pi a b * exp(i k.x0) * J1(rho)/rho, rho = |(a k'_1, b k'_2)|, k' = R(-phi) k."""
    k, scalar = _as_k(k)
    c, s = np.cos(e.phi), np.sin(e.phi)
    k1 = c * k[..., 0] + s * k[..., 1]
    k2 = -s * k[..., 0] + c * k[..., 1]
    rho = np.hypot(e.a * k1, e.b * k2)
    phase = np.exp(1j * (k[..., 0] * e.center[0] + k[..., 1] * e.center[1]))
    values = e.amplitude * 2 * np.pi * e.a * e.b * phase * j1_over_x(rho)
    return _finish(values, scalar)


def boundary_integral_ft(curve: ParametricCurve, k, nodes: int = 512) -> complex | np.ndarray:
    """
    Green's theorem form (1/(i|k|^2)) * contour integral of exp(i k.gamma) k_perp.gamma' dt,
    trapezoid rule on `nodes` equispaced parameters. k = 0 returns the signed area.
    """
    if nodes < MIN_NODES:
        raise ValueError(f"At least {MIN_NODES} quadrature nodes required, got {nodes}")
    k, scalar = _as_k(k)
    flat = k.reshape(-1, 2)
    points, velocity = curve.sample(nodes)
    k_sq = np.sum(flat**2, axis=1)
    zero = k_sq == 0

    values = np.empty(len(flat), dtype=complex)
    if zero.any():
        values[zero] = curve.signed_area(nodes)
    if (~zero).any():
        kk = flat[~zero]
        phase = np.exp(1j * (kk @ points.T))
        k_perp_dot = -kk[:, 1:2] * velocity[:, 0] + kk[:, 0:1] * velocity[:, 1]
        integral = np.sum(phase * k_perp_dot, axis=1) * (2 * np.pi / nodes)
        values[~zero] = integral / (1j * k_sq[~zero])
    return _finish(values.reshape(k.shape[:-1]), scalar)


def line_segment_ft(a, b, k) -> complex | np.ndarray:
    """
    (1/(i|k|^2)) * integral_0^1 exp(i k.gamma(t)) k_perp.(b - a) dt for gamma(t) = a + (b - a) t.

    Closed form with two branches, selected by whether k.(b - a) vanishes
    (relative to |k||b - a|).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = b - a
    length = float(np.hypot(*d))
    if length == 0:
        raise ValueError("Segment endpoints coincide")
    k, scalar = _as_k(k)
    k_sq = k[..., 0] ** 2 + k[..., 1] ** 2
    if np.any(k_sq == 0):
        raise ValueError("line_segment_ft is undefined at k = 0")

    k_dot_d = k[..., 0] * d[0] + k[..., 1] * d[1]
    k_perp_dot_d = -k[..., 1] * d[0] + k[..., 0] * d[1]
    phase_a = np.exp(1j * (k[..., 0] * a[0] + k[..., 1] * a[1]))
    phase_b = np.exp(1j * (k[..., 0] * b[0] + k[..., 1] * b[1]))

    orthogonal = np.abs(k_dot_d) <= PARALLEL_TOLERANCE * np.sqrt(k_sq) * length
    safe = np.where(orthogonal, 1.0, k_dot_d)
    general = -k_perp_dot_d * (phase_b - phase_a) / (k_sq * safe)
    degenerate = k_perp_dot_d * phase_a / (1j * k_sq)
    return _finish(np.where(orthogonal, degenerate, general), scalar)


def polycurve_ft(p: PolyCurveSpec, k) -> complex | np.ndarray:
    """Sum of edge transforms; amplitude * area at k = 0."""
    k, scalar = _as_k(k)
    flat = k.reshape(-1, 2)
    zero = np.sum(flat**2, axis=1) == 0
    values = np.zeros(len(flat), dtype=complex)
    values[zero] = p.area()
    if (~zero).any():
        for start, end in p.edges():
            values[~zero] += line_segment_ft(start, end, flat[~zero])
    values *= p.amplitude
    return _finish(values.reshape(k.shape[:-1]), scalar)


def gaussian_ft(g: GaussianSpec, k) -> complex | np.ndarray:
    """amp * 2 pi sigma^2 * exp(i k.c) * exp(-sigma^2 |k|^2 / 2)."""
    k, scalar = _as_k(k)
    k_sq = k[..., 0] ** 2 + k[..., 1] ** 2
    phase = np.exp(1j * (k[..., 0] * g.center[0] + k[..., 1] * g.center[1]))
    values = g.amplitude * 2 * np.pi * g.sigma**2 * phase * np.exp(-0.5 * g.sigma**2 * k_sq)
    return _finish(values, scalar)


def phantom_ft(spec: PhantomSpec, k) -> complex | np.ndarray:
    """Transform of the whole scene at arbitrary frequencies."""
    k, scalar = _as_k(k)
    total = np.zeros(k.shape[:-1], dtype=complex)
    for e in spec.ellipses:
        total = total + ellipse_ft(e, k)
    for p in spec.polycurves:
        total = total + polycurve_ft(p, k)
    for g in spec.texture:
        total = total + gaussian_ft(g, k)
    return _finish(total, scalar)


def sample_phantom(spec: PhantomSpec, m: int) -> SpectralGrid:
    """Exact transform of the scene at every lattice frequency k = 2 pi n."""
    grid = make_grid(m)
    bandwidth = spec.max_texture_bandwidth()
    if bandwidth >= grid.k_max:
        raise ValueError(
            f"Texture bandwidth {bandwidth:.3f} is not below the grid k_max {grid.k_max:.3f}"
        )
    logger.debug(
        "Sampling %d ellipses, %d polygons, %d Gaussians on a %dx%d grid",
        len(spec.ellipses), len(spec.polycurves), len(spec.texture), grid.side, grid.side,
    )
    return grid.with_samples(phantom_ft(spec, grid.k_vectors))


def phantom_image(spec: PhantomSpec, points) -> np.ndarray:
    """Exact spatial values (piecewise constant plus texture) at the given points."""
    points = np.asarray(points, dtype=float)
    values = np.zeros(points.shape[:-1])
    for e in spec.ellipses:
        values = values + e.amplitude * e.contains(points)
    for p in spec.polycurves:
        values = values + p.amplitude * p.contains(points)
    for g in spec.texture:
        values = values + g.values(points)
    return values
