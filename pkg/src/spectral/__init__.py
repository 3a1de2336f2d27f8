"""
Spectral core: k-space lattice geometry, transforms and noise.

Usage:
------
    from src.spectral import make_grid, inverse_transform

    grid = make_grid(6)
    image = inverse_transform(grid)
"""

from .grid import ImageGrid, SpectralGrid, make_grid, MIN_M, MAX_M
from .transforms import Convention, convention_scale, forward_transform, inverse_transform
from .noise import add_noise, energy
