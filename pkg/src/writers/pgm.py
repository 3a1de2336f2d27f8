"""
16-bit binary PGM (P5) edge maps.

Magnitudes are mapped linearly onto 0..65535; the factor back to |f| goes
into a sidecar text file next to the image. Rows run from high y to low y
so the picture has the usual orientation.
"""

from pathlib import Path

import numpy as np

from src.spectral import ImageGrid

MAXVAL = 65535


def scale_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".scale.txt")


def encode_pgm(image: ImageGrid) -> tuple[bytes, float]:
    """
    P5 bytes and the scale s with |f| ~= s * pixel value.

    An all-zero image encodes as zeros with scale 0.
    """
    magnitude = image.magnitude
    peak = float(magnitude.max())
    scale = peak / MAXVAL if peak > 0 else 0.0
    levels = np.zeros(magnitude.shape) if scale == 0 else np.rint(magnitude / scale)
    # samples[i, j] is (x_i, y_j): transpose to rows of constant y, top row first
    raster = np.clip(levels, 0, MAXVAL).astype(">u2").T[::-1]
    header = f"P5\n{image.side} {image.side}\n{MAXVAL}\n".encode("ascii")
    return header + raster.tobytes(), scale


def write_pgm(image: ImageGrid, path: str | Path) -> Path:
    """Write the edge map and its sidecar scale file; returns the image path."""
    path = Path(path)
    data, scale = encode_pgm(image)
    path.write_bytes(data)
    scale_path(path).write_text(
        f"scale {scale!r}\nmax_magnitude {float(image.magnitude.max())!r}\nmaxval {MAXVAL}\n",
        encoding="utf-8",
    )
    return path
