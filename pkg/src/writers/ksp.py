"""Writer for KSP1 k-space files (layout documented in src.loaders.ksp)."""

from pathlib import Path

import numpy as np

from src.spectral import SpectralGrid


def format_ksp(grid: SpectralGrid) -> bytes:
    interleaved = np.empty((grid.side, grid.side, 2), dtype="<f8")
    interleaved[..., 0] = grid.samples.real
    interleaved[..., 1] = grid.samples.imag
    return f"KSP1 m={grid.m}\n".encode("ascii") + interleaved.tobytes(order="C")


def write_ksp(grid: SpectralGrid, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(format_ksp(grid))
    return path
