"""
Artifact emitters: k-space files, PGM edge maps, CSV tables and SVG overlays.

Usage:
------
    from src.writers import write_ksp, write_pgm

    write_ksp(grid, "phantom.ksp")
    write_pgm(edges, "edges.pgm")
"""

from .ksp import format_ksp, write_ksp
from .pgm import MAXVAL, encode_pgm, scale_path, write_pgm
from .tables import write_asymptotics_csv, write_curves_csv, write_surfels_csv
from .svg import render_svg, write_svg
