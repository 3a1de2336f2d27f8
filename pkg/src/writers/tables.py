"""CSV tables: surfels, reconstructed curves and asymptotic error samples."""

import csv
from pathlib import Path

from src.asymptotics import ErrorSample
from src.segmentation import SegmentedCurve
from src.wavefront import Surfel

FLOAT = "{:.17g}"


def _write_rows(path: str | Path, header: list[str], rows) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_surfels_csv(surfels: list[Surfel], path: str | Path) -> Path:
    rows = ([FLOAT.format(v) for v in (s.x, s.y, s.theta, s.strength)] for s in surfels)
    return _write_rows(path, ["x", "y", "theta", "strength"], rows)


def write_curves_csv(curves: list[SegmentedCurve], path: str | Path) -> Path:
    rows = (
        [curve_id, seq, FLOAT.format(p[0]), FLOAT.format(p[1])]
        for curve_id, curve in enumerate(curves)
        for seq, p in enumerate(curve.points)
    )
    return _write_rows(path, ["curve_id", "seq", "x", "y"], rows)


def write_asymptotics_csv(samples: list[ErrorSample], path: str | Path) -> Path:
    rows = (
        [
            FLOAT.format(s.k),
            FLOAT.format(s.exact.real), FLOAT.format(s.exact.imag),
            FLOAT.format(s.leading.real), FLOAT.format(s.leading.imag),
            FLOAT.format(s.error),
        ]
        for s in samples
    )
    header = ["k", "exact_re", "exact_im", "leading_re", "leading_im", "error"]
    return _write_rows(path, header, rows)
