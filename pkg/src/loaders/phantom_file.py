"""
Load and dump phantom scene files.

Grammar, one primitive per line, '#' starts a comment:

    ellipse cx cy a b phi amp
    gauss cx cy sigma amp
    polyline amp x1 y1 x2 y2 ...
"""

import logging
from pathlib import Path

from pydantic import ValidationError

from src.phantom import EllipseSpec, GaussianSpec, PhantomSpec, PolyCurveSpec

from .text import read_text

logger = logging.getLogger(__name__)


def _floats(fields: list[str], line_no: int) -> list[float]:
    try:
        return [float(f) for f in fields]
    except ValueError:
        raise ValueError(f"Line {line_no}: expected numbers, got {' '.join(fields)!r}") from None


def parse_phantom(text: str) -> PhantomSpec:
    """Build a PhantomSpec from scene-file text."""
    ellipses, texture, polycurves = [], [], []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *fields = line.split()
        values = _floats(fields, line_no)
        try:
            match keyword:
                case "ellipse":
                    if len(values) != 6:
                        raise ValueError(f"Line {line_no}: ellipse needs 6 numbers, got {len(values)}")
                    cx, cy, a, b, phi, amp = values
                    ellipses.append(EllipseSpec(center=(cx, cy), a=a, b=b, phi=phi, amplitude=amp))
                case "gauss":
                    if len(values) != 4:
                        raise ValueError(f"Line {line_no}: gauss needs 4 numbers, got {len(values)}")
                    cx, cy, sigma, amp = values
                    texture.append(GaussianSpec(center=(cx, cy), sigma=sigma, amplitude=amp))
                case "polyline":
                    if len(values) < 7 or len(values) % 2 == 0:
                        raise ValueError(f"Line {line_no}: polyline needs an amplitude and at least 3 vertices")
                    amp, coords = values[0], values[1:]
                    vertices = list(zip(coords[0::2], coords[1::2]))
                    polycurves.append(PolyCurveSpec(vertices=vertices, amplitude=amp))
                case _:
                    raise ValueError(f"Line {line_no}: unknown primitive {keyword!r}")
        except ValidationError as e:
            raise ValueError(f"Line {line_no}: {e.errors()[0]['msg']}") from None
    return PhantomSpec(ellipses=ellipses, texture=texture, polycurves=polycurves)


def load_phantom(path: str | Path) -> PhantomSpec:
    """
    Load a phantom scene file.

    Raises:
        FileNotFoundError: if the file does not exist
        ValueError: if a line is malformed or the scene violates its invariants
    """
    spec = parse_phantom(read_text(path))
    logger.debug(
        "Loaded %s: %d ellipses, %d polygons, %d Gaussians",
        path, len(spec.ellipses), len(spec.polycurves), len(spec.texture),
    )
    return spec


def dump_phantom(spec: PhantomSpec) -> str:
    """Scene-file text for spec, with its derived constants as comments."""
    lines = []
    g = spec.geometry
    if g is not None:
        lines += [
            f"# M = {g.M}",
            f"# delta = {g.delta!r}",
            f"# kappa_low = {g.kappa_low!r}  kappa_bar = {g.kappa_bar!r}",
            f"# rho_low = {g.rho_low!r}  rho_bar = {g.rho_bar!r}",
            f"# gamma3_sup = {g.gamma3_sup!r}  total_arclength = {g.total_arclength!r}",
        ]
    for e in spec.ellipses:
        lines.append(f"ellipse {e.center[0]!r} {e.center[1]!r} {e.a!r} {e.b!r} {e.phi!r} {e.amplitude!r}")
    for p in spec.polycurves:
        coords = " ".join(f"{x!r} {y!r}" for x, y in p.vertices)
        lines.append(f"polyline {p.amplitude!r} {coords}")
    for t in spec.texture:
        lines.append(f"gauss {t.center[0]!r} {t.center[1]!r} {t.sigma!r} {t.amplitude!r}")
    return "\n".join(lines) + "\n"
