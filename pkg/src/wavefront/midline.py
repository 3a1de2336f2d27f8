"""Cluster midlines along the filter direction."""

import math

import numpy as np

from src.config import settings

from .surfel import Cluster

SPACING_RTOL = 1e-9


def _runs(v: np.ndarray, members: np.ndarray, gap: float) -> list[np.ndarray]:
    members = members[np.argsort(v[members], kind="stable")]
    breaks = np.flatnonzero(np.diff(v[members]) > gap) + 1
    return np.split(members, breaks)


def _ridge_members(v: np.ndarray, values: np.ndarray, run: np.ndarray, radius: float) -> list[int]:
    """Members of a run that are the largest value within `radius` along the normal; one per plateau."""
    peaks = []
    for i in run:
        window = run[np.abs(v[run] - v[i]) <= radius]
        if values[i] < values[window].max():
            continue
        if any(abs(v[i] - v[p]) <= radius for p in peaks):
            continue
        peaks.append(int(i))
    return peaks


def midline(c: Cluster, theta: float | None = None) -> np.ndarray:
    """
    Midline of the cluster along lines parallel to the normal theta.

    Members are bucketed by their tangent coordinate at the cluster's pitch.
    Within a bucket, runs separated by more than MIDLINE_GAP_PX pixels along
    the normal are treated as distinct edges. Without member values each run
    contributes (mean tangent coordinate, midpoint of its normal extent).
    With values each run contributes its ridge pixels: the members that are
    the maximum within MIDLINE_NMS_PX pixels along the normal.
    Output is ordered by tangent coordinate, shape (n, 2).
    """
    theta = c.theta if theta is None else theta
    normal = np.array([math.cos(theta), math.sin(theta)])
    tangent = np.array([-math.sin(theta), math.cos(theta)])
    u = c.points @ tangent
    v = c.points @ normal
    bucket = np.rint((u - u.min()) / c.pitch).astype(int)
    gap = settings.MIDLINE_GAP_PX * c.pitch

    result = []
    for b in np.unique(bucket):
        for run in _runs(v, np.flatnonzero(bucket == b), gap):
            if c.values is None:
                u_mid = u[run].mean()
                v_mid = 0.5 * (v[run].min() + v[run].max())
                result.append(u_mid * tangent + v_mid * normal)
            else:
                peaks = _ridge_members(v, c.values, run, settings.MIDLINE_NMS_PX * c.pitch)
                result.extend(c.points[p] for p in peaks)
    return np.asarray(result).reshape(-1, 2)


def subsample_indices(points: np.ndarray, eps: float) -> list[int]:
    """Greedy thinning in the given order: keep a point if it is at least eps from every kept point."""
    if not eps > 0:
        raise ValueError(f"Sample spacing must be positive, got {eps}")
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    kept: list[int] = []
    for i, p in enumerate(points):
        if all(np.hypot(*(p - points[q])) >= eps * (1 - SPACING_RTOL) for q in kept):
            kept.append(i)
    return kept


def subsample(points: np.ndarray, eps: float) -> np.ndarray:
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    return points[subsample_indices(points, eps)].reshape(-1, 2)
