"""
Analytic phantoms and their exact continuous Fourier transforms.

Usage:
------
    from src.phantom import EllipseSpec, PhantomSpec, sample_phantom

    spec = PhantomSpec(ellipses=[EllipseSpec(center=(0.5, 0.5), a=0.25, b=0.25, amplitude=1.0)])
    grid = sample_phantom(spec, m=6)
"""

from .bessel import j1, j1_over_x
from .curves import ParametricCurve, circle_curve, ellipse_curve
from .specs import EllipseSpec, GaussianSpec, PhantomGeometry, PhantomSpec, PolyCurveSpec
from .geometry import compute_geometry, nearest_boundary
from .fourier import (
    boundary_integral_ft,
    ellipse_ft,
    gaussian_ft,
    line_segment_ft,
    phantom_ft,
    phantom_image,
    polycurve_ft,
    sample_phantom,
)
