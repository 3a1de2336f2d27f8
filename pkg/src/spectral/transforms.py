"""
Transforms between k-space samples and pixel-center image samples.

Forward convention: rho_hat(k) = integral of exp(i k.x) rho(x) dx.
Inverse: g(x) = sum_n rho_hat(2 pi n) exp(-2 pi i n.x), evaluated at pixel
centers through a shifted FFT with a half-pixel phase ramp.
"""

from enum import Enum

import numpy as np

from .grid import ImageGrid, SpectralGrid


class Convention(str, Enum):
    """Normalization of the inverse transform."""
    CALIBRATED = "calibrated"     # lattice sum, dk^2/(2 pi)^2 = 1
    THEOREM_RAW = "theorem-raw"   # no 1/(2 pi)^2, one lattice cell = (2 pi)^2


CONVENTION_SCALE: dict[Convention, float] = {
    Convention.CALIBRATED: 1.0,
    Convention.THEOREM_RAW: (2 * np.pi) ** 2,
}


def convention_scale(convention: Convention | str) -> float:
    try:
        return CONVENTION_SCALE[Convention(convention)]
    except ValueError:
        raise ValueError(
            f"Unknown convention: {convention}. Available: {[c.value for c in Convention]}"
        ) from None


def _half_pixel_phase(m: int) -> np.ndarray:
    side = 2**m
    n = np.arange(-side // 2, side // 2)
    ramp = np.exp(-1j * np.pi * n / side)
    return np.outer(ramp, ramp)


def inverse_transform(
    grid: SpectralGrid, convention: Convention | str = Convention.CALIBRATED
) -> ImageGrid:
    """Unnormalized inverse DFT sum of the lattice samples, at pixel centers."""
    shifted = np.fft.ifftshift(grid.samples * _half_pixel_phase(grid.m))
    values = np.fft.fft2(shifted) * convention_scale(convention)
    return ImageGrid(grid.m, values)


def forward_transform(
    image: ImageGrid, convention: Convention | str = Convention.CALIBRATED
) -> SpectralGrid:
    """Exact inverse of :func:`inverse_transform` (DFT scaled by 4^-m)."""
    centered = np.fft.fftshift(np.fft.ifft2(image.samples))
    samples = centered / _half_pixel_phase(image.m) / convention_scale(convention)
    return SpectralGrid(image.m, samples)
