"""
Tangent-consistent linking of surfels into a polygonal figure.

Candidate edges join surfels closer than the link radius whose chord runs
along both tangents and whose normals agree within 2 xi + kappa_bar eps.
Edges are accepted shortest first while both endpoints have degree < 2 and
a vertex's two neighbours lie on opposite sides along its tangent. For
convex scenes the normal must also turn one way along every chain. A second
pass bridges chain ends up to the bridge radius, which closes curves whose
samples thin out and joins fragments of the same curve.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from src.config import settings
from src.wavefront import Surfel, angle_difference, signed_offset

from .bounds import NoiseBounds

logger = logging.getLogger(__name__)


@dataclass
class PolygonalFigure:
    """Surfels as vertices, accepted links as edges (i < j), and the vertices left unlinked."""

    vertices: list[Surfel]
    edges: list[tuple[int, int]] = field(default_factory=list)
    spurious: list[int] = field(default_factory=list)

    def adjacency(self) -> list[list[int]]:
        neighbours: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self.edges:
            neighbours[i].append(j)
            neighbours[j].append(i)
        return neighbours

    def degrees(self) -> list[int]:
        return [len(n) for n in self.adjacency()]

    def components(self) -> tuple[list[list[int]], list[list[int]]]:
        """
        Split linked vertices into closed cycles and open chains, each as an
        ordered vertex list. Cycles are oriented counterclockwise.
        """
        neighbours = self.adjacency()
        visited = np.zeros(len(self.vertices), dtype=bool)
        cycles, chains = [], []

        def walk(start: int) -> list[int]:
            path, previous, current = [start], -1, start
            visited[start] = True
            while True:
                step = [n for n in neighbours[current] if n != previous and not visited[n]]
                if not step:
                    return path
                previous, current = current, step[0]
                visited[current] = True
                path.append(current)

        for v in range(len(self.vertices)):
            if not visited[v] and len(neighbours[v]) == 1:
                chains.append(walk(v))
        for v in range(len(self.vertices)):
            if not visited[v] and len(neighbours[v]) == 2:
                cycle = walk(v)
                if _signed_area([self.vertices[i].position for i in cycle]) < 0:
                    cycle = [cycle[0], *reversed(cycle[1:])]
                cycles.append(cycle)
        return cycles, chains


def _signed_area(points) -> float:
    p = np.asarray(points)
    return float(0.5 * np.sum(p[:, 0] * np.roll(p[:, 1], -1) - np.roll(p[:, 0], -1) * p[:, 1]))


def _chord_deviation(chord: np.ndarray, theta: float) -> float:
    """Angle between the chord's line and the tangent line of normal theta."""
    chord_normal = math.atan2(chord[1], chord[0]) + math.pi / 2
    return float(angle_difference(chord_normal, theta))


def _candidates(
    surfels: list[Surfel], positions: np.ndarray, pairs, max_chord: float, max_turn: float
) -> list[tuple[float, int, int]]:
    """Pairs whose chord runs along both tangents and whose normals differ by less than max_turn, shortest first."""
    candidates = []
    for i, j in pairs:
        chord = positions[j] - positions[i]
        length = float(np.hypot(*chord))
        if length == 0:
            continue
        if _chord_deviation(chord, surfels[i].theta) >= max_chord:
            continue
        if _chord_deviation(chord, surfels[j].theta) >= max_chord:
            continue
        if angle_difference(surfels[i].theta, surfels[j].theta) >= max_turn:
            continue
        candidates.append((length, min(i, j), max(i, j)))
    candidates.sort()
    return candidates


class _Linker:
    """Degree-bounded edge acceptance shared by the linking and bridging passes."""

    def __init__(self, surfels: list[Surfel], positions: np.ndarray, bounds: NoiseBounds, convex: bool):
        self.surfels = surfels
        self.positions = positions
        self.convex = convex
        self.turn_tolerance = bounds.xi
        self.linked: list[list[int]] = [[] for _ in surfels]
        self.edges: list[tuple[int, int]] = []

    def opposite_side(self, v: int, new: int) -> bool:
        if not self.linked[v]:
            return True
        tangent = self.surfels[v].tangent
        old_side = np.dot(self.positions[self.linked[v][0]] - self.positions[v], tangent)
        new_side = np.dot(self.positions[new] - self.positions[v], tangent)
        return old_side * new_side < 0

    def turn_from(self, v: int, first: int) -> float:
        """
        Signed normal change from v to the first vertex, walking away from v
        through `first` and its chain, whose normal differs by more than the
        tolerance; 0 when none does within ROTATION_WALK vertices.
        """
        previous, current = v, first
        for _ in range(settings.ROTATION_WALK):
            turn = float(signed_offset(self.surfels[current].theta, self.surfels[v].theta))
            if abs(turn) > self.turn_tolerance:
                return turn
            step = [n for n in self.linked[current] if n != previous]
            if not step:
                break
            previous, current = current, step[0]
        return 0.0

    def monotone(self, v: int, new: int) -> bool:
        """False when v would become a turning point of the normal along its chain."""
        if not self.convex or not self.linked[v]:
            return True
        return self.turn_from(v, self.linked[v][0]) * self.turn_from(v, new) <= 0

    def try_link(self, i: int, j: int) -> bool:
        if j in self.linked[i] or len(self.linked[i]) >= 2 or len(self.linked[j]) >= 2:
            return False
        if not (self.opposite_side(i, j) and self.opposite_side(j, i)):
            return False
        if not (self.monotone(i, j) and self.monotone(j, i)):
            return False
        self.linked[i].append(j)
        self.linked[j].append(i)
        self.edges.append((min(i, j), max(i, j)))
        return True


def polygonalize(
    surfels: list[Surfel], bounds: NoiseBounds, kappa_bar: float = 0.0, convex: bool = False
) -> PolygonalFigure:
    """
    Link surfels into cycles and chains; vertices with no consistent neighbour are spurious.

    Args:
        surfels: Merged surfels
        bounds: Noise bounds; link_radius and bridge_radius set the reach
        kappa_bar: Curvature upper bound, widening the allowed normal turn
        convex: Every curve is convex (kappa_low > 0), so normals turn monotonically
    """
    figure = PolygonalFigure(vertices=list(surfels))
    n = len(surfels)
    if n == 0:
        return figure

    positions = np.array([s.position for s in surfels])
    tree = cKDTree(positions)
    max_chord = math.pi / 2 - settings.CHORD_MARGIN
    max_turn = min(2 * bounds.xi + kappa_bar * bounds.link_radius, math.pi / 2)
    linker = _Linker(surfels, positions, bounds, convex)

    for _, i, j in _candidates(surfels, positions, tree.query_pairs(bounds.link_radius), max_chord, max_turn):
        linker.try_link(i, j)

    bridges = 0
    if bounds.bridge_radius > bounds.link_radius:
        ends = [v for v in range(n) if len(linker.linked[v]) == 1]
        pairs = [
            (ends[a], ends[b])
            for a, nearby in enumerate(cKDTree(positions[ends]).query_ball_point(positions[ends], bounds.bridge_radius))
            for b in nearby
            if a < b
        ] if ends else []
        bridge_turn = min(2 * bounds.xi + kappa_bar * bounds.bridge_radius, math.pi / 2)
        for _, i, j in _candidates(surfels, positions, pairs, max_chord, bridge_turn):
            bridges += linker.try_link(i, j)

    figure.edges = linker.edges
    figure.spurious = [v for v in range(n) if not linker.linked[v]]
    logger.debug(
        "Polygonalized %d surfels: %d edges (%d bridges), %d spurious (link radius %.4g, max turn %.3f)",
        n, len(figure.edges), bridges, len(figure.spurious), bounds.link_radius, max_turn,
    )
    return figure
