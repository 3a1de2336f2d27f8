"""
Reader for KSP1 k-space files.

Layout: the ASCII line "KSP1 m=<int>\\n", then 2 * 4^m little-endian float64
values, row-major over the frequency index, interleaved (re, im).
"""

import re
from pathlib import Path

import numpy as np

from src.spectral import SpectralGrid

HEADER = re.compile(rb"KSP1 m=(\d+)\n")


def parse_ksp(data: bytes) -> SpectralGrid:
    newline = data.find(b"\n")
    match = HEADER.fullmatch(data[: newline + 1]) if newline >= 0 else None
    if match is None:
        raise ValueError("Not a KSP1 file: missing 'KSP1 m=<int>' header")
    m = int(match.group(1))
    side = 2**m
    payload = data[newline + 1:]
    expected = 2 * side * side * 8
    if len(payload) != expected:
        raise ValueError(f"KSP1 payload has {len(payload)} bytes, expected {expected} for m={m}")
    values = np.frombuffer(payload, dtype="<f8").reshape(side, side, 2)
    return SpectralGrid(m, values[..., 0] + 1j * values[..., 1])


def read_ksp(path: str | Path) -> SpectralGrid:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such k-space file: {path}")
    return parse_ksp(path.read_bytes())
