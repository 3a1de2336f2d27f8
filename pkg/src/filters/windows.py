"""
Concrete radial and angular windows.

The radial step is two-sided: W(k_r) = W_p(k_r - mid) + W_p(k_r + mid) with
W_p the centered indicator of the pass band, so a single angular lobe picks
up both k and -k.
"""

import math

import numpy as np

from .base import BaseWindow

KERNEL_RANGE = 20.0
KERNEL_SAMPLES = 200_001


def wrap_angle(angle) -> np.ndarray:
    """Shortest signed angular distance, in [-pi, pi)."""
    return np.mod(np.asarray(angle, dtype=float) + np.pi, 2 * np.pi) - np.pi


class StepRadialWindow(BaseWindow):
    """Height (2 (k_max - k_tex))^-1 on k_tex <= |k_r| <= k_max."""

    name = "step"

    def __init__(self, k_tex: float, k_max: float):
        if not 0 < k_tex < k_max:
            raise ValueError(f"Need 0 < k_tex < k_max, got k_tex={k_tex}, k_max={k_max}")
        self.k_tex = k_tex
        self.k_max = k_max

    @property
    def band(self) -> float:
        return self.k_max - self.k_tex

    @property
    def height(self) -> float:
        return 1.0 / (2.0 * self.band)

    def __call__(self, values):
        r = np.abs(np.asarray(values, dtype=float))
        return np.where((r >= self.k_tex) & (r <= self.k_max), self.height, 0.0)

    def l1_norm(self) -> float:
        return 1.0

    def derivative_norm(self) -> float:
        # four jumps of size `height`
        return 4.0 * self.height

    def inverse_norm(self) -> float:
        """||W / k_r||_L1 = ln(k_max / k_tex) / (k_max - k_tex)."""
        return math.log(self.k_max / self.k_tex) / self.band

    def half_inverse_norm(self) -> float:
        """||k_r^(-1/2) W||_L1 over both half-lines: 2 / (sqrt(k_max) + sqrt(k_tex))."""
        return 2.0 / (math.sqrt(self.k_max) + math.sqrt(self.k_tex))

    def half_inverse_norm_one_sided(self) -> float:
        return 1.0 / (math.sqrt(self.k_max) + math.sqrt(self.k_tex))

    def decay_constant(self) -> float:
        """C_W with sup_{r' > r} |W_check(r')| <= C_W / r."""
        return 1.0 / self.band

    def profile_inf(self, half_width: float) -> float:
        """inf of the centered profile W_p over [-half_width, half_width]."""
        return self.height if half_width <= self.band / 2 else 0.0

    def kernel(self, r) -> np.ndarray:
        """W_check(r) = integral exp(-i r k) W(k) dk = (sin(k_max r) - sin(k_tex r)) / (band r)."""
        r = np.asarray(r, dtype=float)
        safe = np.where(r == 0, 1.0, r)
        values = (np.sin(self.k_max * safe) - np.sin(self.k_tex * safe)) / (self.band * safe)
        return np.where(r == 0, 1.0, values)

    def kernel_weighted_sup(self) -> float:
        """sup_r |W_check(r)| (r + 1), by dense sampling of r in [0, 20]."""
        r = np.linspace(0.0, KERNEL_RANGE, KERNEL_SAMPLES)
        return float(np.max(np.abs(self.kernel(r)) * (r + 1)))


class TriangleAngularWindow(BaseWindow):
    """alpha^-2 max(alpha - |wrap(theta)|, 0); unit mass on the circle."""

    name = "triangle"

    def __init__(self, alpha: float):
        if alpha <= 0:
            raise ValueError(f"Angular half-width must be positive, got {alpha}")
        self.alpha = alpha

    def __call__(self, values):
        distance = np.abs(wrap_angle(values))
        return np.maximum(self.alpha - distance, 0.0) / self.alpha**2

    def l1_norm(self) -> float:
        return 1.0

    def derivative_norm(self) -> float:
        return 2.0 / self.alpha


class RectangularAngularWindow(BaseWindow):
    """(2 alpha)^-1 on |wrap(theta)| <= alpha."""

    name = "rectangular"

    def __init__(self, alpha: float):
        if alpha <= 0:
            raise ValueError(f"Angular half-width must be positive, got {alpha}")
        self.alpha = alpha

    def __call__(self, values):
        distance = np.abs(wrap_angle(values))
        return np.where(distance <= self.alpha, 1.0 / (2 * self.alpha), 0.0)

    def l1_norm(self) -> float:
        return 1.0

    def derivative_norm(self) -> float:
        # two jumps of size (2 alpha)^-1
        return 1.0 / self.alpha
