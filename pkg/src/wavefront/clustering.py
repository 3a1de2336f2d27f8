"""Single-linkage clustering of thresholded pixels."""

import logging
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .surfel import Cluster

logger = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets over 0..size-1 with path compression."""

    def __init__(self, size: int):
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        # compress the path so every visited element points at the root
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        self.parents[max(ra, rb)] = min(ra, rb)
        self.num_components -= 1

    def components(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parents)):
            groups.setdefault(self.find(i), []).append(i)
        return list(groups.values())


def cluster(
    points: np.ndarray,
    radius: float,
    theta: float = 0.0,
    pitch: float = 1.0,
    values: Optional[np.ndarray] = None,
) -> list[Cluster]:
    """
    Partition points into single-linkage components: two points share a
    cluster when a chain of hops of length <= radius joins them.

    Clusters are ordered by their lexicographically smallest member and
    carry the matching slice of `values` when given.
    """
    if not radius > 0:
        raise ValueError(f"Linkage radius must be positive, got {radius}")
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) == 0:
        return []
    if values is not None:
        values = np.asarray(values, dtype=float).reshape(-1)

    sets = UnionFind(len(points))
    for i, j in cKDTree(points).query_pairs(radius):
        sets.union(i, j)

    clusters = []
    for members in sets.components():
        member_points = points[members]
        member_values = None if values is None else values[members]
        first = member_points[np.lexsort((member_points[:, 1], member_points[:, 0]))[0]]
        clusters.append((tuple(first), Cluster(member_points, theta, pitch, member_values)))
    clusters.sort(key=lambda item: item[0])
    logger.debug("Clustered %d points into %d clusters at radius %.4g", len(points), len(clusters), radius)
    return [c for _, c in clusters]
