"""
Directional filter windows, theorem constants and the filter bank.

Available Windows:
------------------
- StepRadialWindow ("step") - two-sided indicator of the pass band [k_tex, k_max]
- TriangleAngularWindow ("triangle") - unit-mass triangle of half-width alpha
- RectangularAngularWindow ("rectangular") - unit-mass box of half-width alpha

Usage:
------
    from src.filters import FilterParams, apply_directional_filter, get_window

    params = FilterParams.for_grid(6)
    window = get_window("triangle", alpha=params.alpha)
    edges = apply_directional_filter(grid, theta, params)
"""

from .base import BaseWindow
from .windows import RectangularAngularWindow, StepRadialWindow, TriangleAngularWindow, wrap_angle
from .params import (
    SUBOPTIMAL_EXAMPLE,
    Detector,
    FilterConstants,
    FilterParams,
    SuboptimalExample,
    TheoryChecks,
    parabolic_alpha,
)
from .constants import filter_constants, filter_norms, general_filter_constant, step_filter_constant, theory_checks
from .bank import (
    apply_detector,
    apply_directional_derivative,
    apply_directional_filter,
    directional_multiplier,
    filter_bank,
)


def get_window(name: str, **kwargs) -> BaseWindow:
    """
    Factory function to get a window by name.

    Args:
        name: One of "step", "triangle", "rectangular"
        **kwargs: Window parameters (k_tex/k_max or alpha)

    Returns:
        BaseWindow instance
    """
    windows = {
        "step": StepRadialWindow,
        "triangle": TriangleAngularWindow,
        "rectangular": RectangularAngularWindow,
    }

    if name not in windows:
        raise ValueError(f"Unknown window: {name}. Available: {list(windows.keys())}")

    return windows[name](**kwargs)


def radial_window(params: FilterParams) -> StepRadialWindow:
    return StepRadialWindow(params.k_tex, params.k_max)


def angular_window(alpha: float) -> TriangleAngularWindow:
    return TriangleAngularWindow(alpha)

