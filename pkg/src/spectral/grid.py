"""Centered k-space lattice and the pixel-center image grid it maps to."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

MIN_M = 3
MAX_M = 12


def _check_m(m: int) -> int:
    if isinstance(m, bool) or int(m) != m:
        raise ValueError(f"Grid exponent must be an integer, got {m!r}")
    m = int(m)
    if not MIN_M <= m <= MAX_M:
        raise ValueError(f"Grid exponent m={m} out of range [{MIN_M}, {MAX_M}]")
    return m


def _frozen(values: np.ndarray, side: int, name: str) -> np.ndarray:
    array = np.array(values, dtype=np.complex128, copy=True)
    if array.shape != (side, side):
        raise ValueError(f"{name} samples must have shape {(side, side)}, got {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """
    Complex k-space samples on a centered 2^m x 2^m lattice with spacing 2*pi.

    ``samples[a, b]`` holds the value at frequency index
    ``n = (a - 2^(m-1), b - 2^(m-1))``, i.e. at ``k = 2*pi*n``.
    """

    m: int
    samples: np.ndarray

    def __post_init__(self):
        m = _check_m(self.m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "samples", _frozen(self.samples, 2**m, "SpectralGrid"))

    @property
    def side(self) -> int:
        return 2**self.m

    @property
    def k_max(self) -> float:
        """Largest axis frequency magnitude, 2*pi*2^(m-1)."""
        return 2 * np.pi * 2 ** (self.m - 1)

    @cached_property
    def indices(self) -> np.ndarray:
        """Integer frequency indices along one axis, -2^(m-1) .. 2^(m-1)-1."""
        half = self.side // 2
        return np.arange(-half, half)

    @cached_property
    def k_vectors(self) -> np.ndarray:
        """Physical frequencies, shape (side, side, 2)."""
        k = 2 * np.pi * self.indices.astype(float)
        kx, ky = np.meshgrid(k, k, indexing="ij")
        return np.stack([kx, ky], axis=-1)

    @cached_property
    def k_r(self) -> np.ndarray:
        return np.hypot(self.k_vectors[..., 0], self.k_vectors[..., 1])

    @cached_property
    def k_theta(self) -> np.ndarray:
        """Polar angle in [0, 2*pi); the k=0 sample gets angle 0."""
        theta = np.arctan2(self.k_vectors[..., 1], self.k_vectors[..., 0])
        theta = np.mod(theta, 2 * np.pi)
        theta[self.k_r == 0] = 0.0
        return theta

    def index_of(self, n: tuple[int, int]) -> tuple[int, int]:
        """Array position of frequency index n."""
        half = self.side // 2
        a, b = int(n[0]) + half, int(n[1]) + half
        if not (0 <= a < self.side and 0 <= b < self.side):
            raise ValueError(f"Frequency index {n} outside the {self.side}x{self.side} lattice")
        return a, b

    def value_at(self, n: tuple[int, int]) -> complex:
        return complex(self.samples[self.index_of(n)])

    def with_samples(self, samples: np.ndarray) -> "SpectralGrid":
        return SpectralGrid(self.m, samples)


@dataclass(frozen=True, eq=False)
class ImageGrid:
    """Complex image values at pixel centers x = (i + 1/2) / 2^m on [0, 1]^2."""

    m: int
    samples: np.ndarray

    def __post_init__(self):
        m = _check_m(self.m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "samples", _frozen(self.samples, 2**m, "ImageGrid"))

    @property
    def side(self) -> int:
        return 2**self.m

    @property
    def pitch(self) -> float:
        return 1.0 / self.side

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Pixel-center coordinates along one axis."""
        return (np.arange(self.side) + 0.5) / self.side

    @cached_property
    def points(self) -> np.ndarray:
        """Pixel-center positions, shape (side, side, 2); points[i, j] = (x_i, y_j)."""
        x, y = np.meshgrid(self.coordinates, self.coordinates, indexing="ij")
        return np.stack([x, y], axis=-1)

    @cached_property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.samples)


def make_grid(m: int) -> SpectralGrid:
    """Zero-filled k-space grid with side 2^m."""
    m = _check_m(m)
    side = 2**m
    return SpectralGrid(m, np.zeros((side, side), dtype=np.complex128))
