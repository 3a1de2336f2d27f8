"""SVG overlay of reconstructed curves on a gray edge-map backdrop."""

from pathlib import Path
from typing import Optional

import numpy as np

from src.segmentation import SegmentedCurve
from src.spectral import ImageGrid
from src.wavefront import Surfel

SIZE = 512
CURVE_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]


def _backdrop(image: ImageGrid) -> list[str]:
    magnitude = image.magnitude
    peak = float(magnitude.max()) or 1.0
    pitch = image.pitch
    cells = []
    for i, j in zip(*np.nonzero(magnitude > 0)):
        level = int(round(255 * magnitude[i, j] / peak))
        cells.append(
            f'<rect x="{i * pitch:.6f}" y="{1 - (j + 1) * pitch:.6f}" width="{pitch:.6f}" '
            f'height="{pitch:.6f}" fill="rgb({level},{level},{level})"/>'
        )
    return cells


def render_svg(
    curves: list[SegmentedCurve],
    backdrop: Optional[ImageGrid] = None,
    surfels: Optional[list[Surfel]] = None,
) -> str:
    """Curves as polylines in unit-square coordinates, y pointing up."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 1 1">',
        '<rect x="0" y="0" width="1" height="1" fill="black"/>',
    ]
    if backdrop is not None:
        parts += _backdrop(backdrop)
    for s in surfels or []:
        parts.append(f'<circle cx="{s.x:.6f}" cy="{1 - s.y:.6f}" r="0.002" fill="#ffff00"/>')
    for curve_id, curve in enumerate(curves):
        coords = " ".join(f"{x:.6f},{1 - y:.6f}" for x, y in curve.points)
        tag = "polygon" if curve.closed else "polyline"
        color = CURVE_COLORS[curve_id % len(CURVE_COLORS)]
        parts.append(f'<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="0.003"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(
    curves: list[SegmentedCurve],
    path: str | Path,
    backdrop: Optional[ImageGrid] = None,
    surfels: Optional[list[Surfel]] = None,
) -> Path:
    path = Path(path)
    path.write_text(render_svg(curves, backdrop, surfels), encoding="utf-8")
    return path
