import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.filters import FilterParams
from src.phantom import PhantomSpec, nearest_boundary
from src.segmentation import (
    NoiseBounds,
    PolygonalFigure,
    hausdorff_to_spec,
    hermite_segment,
    interpolate_path,
    match_curves,
    merge_surfels,
    polygonalize,
    run_segmentation,
    segment_surfels,
    thin_surfels,
)
from src.wavefront import Surfel

PIXEL = 1 / 64
CENTER = np.array([0.5, 0.5])


def circle_surfels(radius: float, count: int, phase: float = 0.0, center=(0.5, 0.5)) -> list[Surfel]:
    angles = phase + 2 * np.pi * np.arange(count) / count
    cx, cy = center
    return [Surfel(cx + radius * math.cos(a), cy + radius * math.sin(a), a, 1.0) for a in angles]


def radial_error(points: np.ndarray, radius: float) -> float:
    return float(np.max(np.abs(np.linalg.norm(points - CENTER, axis=1) - radius)))


CIRCLE_BOUNDS = NoiseBounds(zeta=0.0, xi=0.01, eps=0.055, link_radius=0.055)


class TestBounds:
    def test_from_params(self, default_params):
        bounds = NoiseBounds.from_constants(default_params, 6)
        assert bounds.zeta == pytest.approx(PIXEL)
        assert bounds.xi == default_params.alpha
        assert bounds.eps == pytest.approx((2 * math.pi / 16 + math.pi / 16) / default_params.kappa_low)
        assert bounds.link_radius == pytest.approx(4 * PIXEL)
        assert bounds.min_spacing == pytest.approx((1 + 2**1.5) * (2 * bounds.xi * bounds.eps + bounds.zeta))

    def test_resolution_sets_zeta(self, default_params, default_constants):
        small = default_constants.model_copy(update={"resolution_D": 0.25 * PIXEL})
        assert NoiseBounds.from_constants(default_params, 6, small).zeta == pytest.approx(0.25 * PIXEL)

    def test_no_curvature_bound(self):
        params = FilterParams(k_tex=32 * math.pi, k_max=64 * math.pi, alpha=math.pi / 16)
        bounds = NoiseBounds.from_constants(params, 6)
        assert bounds.eps == bounds.link_radius == pytest.approx(4 * PIXEL)

    def test_separation_conditions(self):
        bounds = NoiseBounds(zeta=0.001, xi=0.01, eps=0.05, link_radius=0.05)
        assert bounds.noiseless_check(0.03, 4.0)
        assert not bounds.noiseless_check(0.01, 4.0)
        # 4 zeta + 4 eps xi + 2.1 kappa_bar eps^2 = 0.027
        assert bounds.check(0.03, 4.0)
        assert not bounds.check(0.02, 4.0)
        assert not bounds.check(None, 20.0)


class TestDedup:
    def test_merge_weighted(self):
        surfels = [Surfel(0.5, 0.5, 0.1, 3.0), Surfel(0.51, 0.5, 0.12, 1.0), Surfel(0.505, 0.5, 1.2, 5.0)]
        merged = merge_surfels(surfels, zeta=0.02, alpha=0.05)
        assert len(merged) == 2
        strongest, pair = merged
        assert strongest.theta == pytest.approx(1.2)
        assert pair.x == pytest.approx(0.5025)
        assert pair.strength == 3.0
        assert 0.1 < pair.theta < 0.12

    def test_merge_wraps_angles(self):
        merged = merge_surfels([Surfel(0.5, 0.5, 0.01, 1.0), Surfel(0.5, 0.5, math.pi - 0.01, 1.0)], 0.01, 0.05)
        assert len(merged) == 1
        assert min(merged[0].theta, math.pi - merged[0].theta) == pytest.approx(0.0, abs=1e-12)

    def test_zero_radius_is_identity(self):
        surfels = circle_surfels(0.25, 8)
        assert merge_surfels(surfels, 0.0, 0.1) == surfels

    def test_thin_keeps_strongest(self):
        surfels = [Surfel(0.50, 0.5, 0.0, 1.0), Surfel(0.51, 0.5, 0.0, 2.0), Surfel(0.52, 0.5, 0.0, 1.0)]
        assert thin_surfels(surfels, 0.015) == [surfels[1]]
        assert thin_surfels(surfels, 0.005) == surfels


class TestPolygonalize:
    def test_concentric_circles(self):
        surfels = circle_surfels(0.25, 40) + circle_surfels(0.34, 40, phase=0.05)
        figure = polygonalize(surfels, CIRCLE_BOUNDS, kappa_bar=4.0)
        cycles, chains = figure.components()
        assert len(cycles) == 2 and not chains
        assert figure.spurious == []
        assert all(d == 2 for d in figure.degrees())
        assert sorted(len(c) for c in cycles) == [40, 40]

    def test_isolated_surfel_is_spurious(self):
        surfels = circle_surfels(0.25, 40) + circle_surfels(0.34, 40, phase=0.05)
        surfels.append(Surfel(0.795, 0.5, math.pi / 2, 1.0))
        figure = polygonalize(surfels, CIRCLE_BOUNDS, kappa_bar=4.0)
        assert figure.spurious == [80]
        assert len(figure.components()[0]) == 2

    def test_cycles_counterclockwise(self):
        surfels = list(reversed(circle_surfels(0.25, 40)))
        figure = polygonalize(surfels, CIRCLE_BOUNDS, kappa_bar=4.0)
        (cycle,), _ = figure.components()
        points = np.array([surfels[i].position for i in cycle]) - CENTER
        angles = np.unwrap(np.arctan2(points[:, 1], points[:, 0]))
        assert angles[-1] > angles[0]

    def test_open_chain(self):
        surfels = [Surfel(0.2 + 0.01 * i, 0.5, math.pi / 2, 1.0) for i in range(5)]
        figure = polygonalize(surfels, NoiseBounds(zeta=0.0, xi=0.01, eps=0.015, link_radius=0.015))
        cycles, chains = figure.components()
        assert not cycles
        assert [sorted(c) for c in chains] == [[0, 1, 2, 3, 4]]

    def test_empty(self):
        assert polygonalize([], CIRCLE_BOUNDS).components() == ([], [])

    def test_bridge_closes_gap(self):
        surfels = circle_surfels(0.25, 40)[:-2]
        _, chains = polygonalize(surfels, CIRCLE_BOUNDS, kappa_bar=4.0).components()
        assert len(chains) == 1
        bridged = polygonalize(surfels, CIRCLE_BOUNDS.model_copy(update={"bridge_radius": 0.13}), kappa_bar=4.0)
        cycles, chains = bridged.components()
        assert [len(c) for c in cycles] == [38] and not chains

    def test_touching_circles_stay_apart(self):
        # the two circles touch at (0.5, 0.5); the first circle has a surfel there
        left = circle_surfels(0.1, 40, center=(0.4, 0.5))
        right = circle_surfels(0.1, 40, phase=math.pi / 40, center=(0.6, 0.5))
        bounds = NoiseBounds(zeta=0.0, xi=0.05, eps=0.02, link_radius=0.02, bridge_radius=0.04)
        figure = polygonalize(left + right, bounds, kappa_bar=10.0, convex=True)
        cycles, chains = figure.components()
        assert not chains and figure.spurious == []
        small, large = sorted(cycles, key=len)
        # the touching surfel goes to one circle; the other closes by a bridge
        assert sorted(small) == list(range(1, 40))
        assert sorted(large) == [0, *range(40, 80)]
        assert max(figure.degrees()) == 2

    def test_figure_components(self):
        vertices = [Surfel(x, y, 0.0, 1.0) for x, y in [(0.2, 0.2), (0.2, 0.4), (0.4, 0.4), (0.4, 0.2), (0.8, 0.8)]]
        figure = PolygonalFigure(vertices, edges=[(0, 1), (1, 2), (2, 3), (0, 3)], spurious=[4])
        assert figure.degrees() == [2, 2, 2, 2, 0]
        (cycle,), chains = figure.components()
        assert not chains
        # clockwise input comes back counterclockwise
        assert cycle == [0, 3, 2, 1]

    @pytest.mark.parametrize("convex", [False, True])
    def test_degree_bound_on_random_surfels(self, convex):
        rng = np.random.default_rng(13)
        xy = rng.uniform(0.1, 0.9, (300, 2))
        angles = rng.uniform(0, 2 * np.pi, 300)
        surfels = [Surfel(x, y, a, 1.0) for (x, y), a in zip(xy, angles)]
        bounds = NoiseBounds(zeta=0.0, xi=0.5, eps=0.08, link_radius=0.08, bridge_radius=0.15)
        figure = polygonalize(surfels, bounds, kappa_bar=10.0, convex=convex)
        degrees = figure.degrees()
        assert figure.edges
        assert max(degrees) <= 2
        assert len(set(figure.edges)) == len(figure.edges)
        assert all(degrees[v] == 0 for v in figure.spurious)


class TestHermite:
    def test_segment_endpoints(self):
        p0, p1 = np.array([0.0, 0.0]), np.array([1.0, 0.5])
        points = hermite_segment(p0, p1, np.array([1.0, 0.0]), np.array([0.0, 1.0]), 4)
        assert points.shape == (4, 2)
        assert_allclose(points[0], p0)

    def test_circle_fourth_order(self):
        errors = []
        for count in (16, 32):
            angles = 2 * np.pi * np.arange(count) / count
            positions = CENTER + 0.3 * np.column_stack([np.cos(angles), np.sin(angles)])
            curve = interpolate_path(positions, angles, closed=True, samples_per_edge=32)
            errors.append(radial_error(curve.points, 0.3))
        assert 12 <= errors[0] / errors[1] <= 20

    def test_closed_path_returns_to_start(self):
        angles = 2 * np.pi * np.arange(12) / 12
        positions = CENTER + 0.2 * np.column_stack([np.cos(angles), np.sin(angles)])
        curve = interpolate_path(positions, angles, closed=True, samples_per_edge=8)
        assert curve.edge_count == 12
        assert_allclose(curve.points[-1], curve.points[0])
        assert len(curve.points) == 12 * 8 + 1

    def test_invalid_paths(self):
        with pytest.raises(ValueError):
            interpolate_path(np.array([[0.1, 0.1]]), np.array([0.0]), closed=False, samples_per_edge=4)
        with pytest.raises(ValueError):
            interpolate_path(np.array([[0.1, 0.1], [0.1, 0.1]]), np.zeros(2), closed=False, samples_per_edge=4)
        with pytest.raises(ValueError):
            interpolate_path(np.array([[0.1, 0.1], [0.2, 0.1]]), np.zeros(2), closed=False, samples_per_edge=0)


class TestSegmentSurfels:
    def test_two_circles(self):
        surfels = circle_surfels(0.25, 40) + circle_surfels(0.34, 40, phase=0.05)
        result = segment_surfels(surfels, CIRCLE_BOUNDS, alpha=0.01, kappa_bar=4.0, samples_per_edge=16)
        assert len(result.curves) == 2
        assert all(c.closed for c in result.curves)
        errors = sorted(min(radial_error(c.points, 0.25), radial_error(c.points, 0.34)) for c in result.curves)
        assert errors[-1] < 1e-3

    def test_strict_mode_thins_nothing_here(self):
        surfels = circle_surfels(0.25, 40)
        bounds = CIRCLE_BOUNDS.model_copy(update={"strict": True})
        result = segment_surfels(surfels, bounds, alpha=0.01, kappa_bar=4.0)
        assert len(result.merged) == 40
        assert len(result.curves) == 1

    def test_match_disk(self, disk_spec):
        surfels = circle_surfels(0.25, 40)
        result = segment_surfels(surfels, CIRCLE_BOUNDS, alpha=0.01, kappa_bar=4.0)
        ((index, distance),) = match_curves(result.curves, disk_spec)
        assert index == 0
        assert distance < 0.25 * PIXEL

    def test_match_empty_scene(self):
        curve = interpolate_path(np.array([[0.1, 0.1], [0.2, 0.1]]), np.zeros(2), closed=False, samples_per_edge=4)
        with pytest.raises(ValueError):
            hausdorff_to_spec(curve, PhantomSpec())


def _worst_curve_distance(curves, spec) -> float:
    points = np.vstack([c.points for c in curves])
    distance, _, _ = nearest_boundary(spec, points)
    return float(distance.max())


class TestEndToEnd:
    def test_disk_single_closed_curve(self, disk_spec):
        from src.phantom import sample_phantom

        g = disk_spec.geometry
        params = FilterParams.for_grid(6, kappa_low=g.kappa_low, kappa_bar=g.kappa_bar)
        result = run_segmentation(sample_phantom(disk_spec, 6), params, mode="fraction")
        assert len(result.curves) == 1
        (curve,) = result.curves
        assert curve.closed
        ((index, distance),) = match_curves(result.curves, disk_spec)
        assert index == 0
        assert distance <= 1.5 * PIXEL
        assert max(result.figure.degrees()) <= 2

    @pytest.mark.slow
    def test_default_phantom_closed_curves(self, default_spec, default_grid, default_params):
        result = run_segmentation(default_grid, default_params, mode="fraction", delta=default_spec.geometry.delta)
        assert max(result.figure.degrees()) <= 2
        closed = [c for c in result.curves if c.closed]
        assert len(closed) == default_spec.geometry.M
        matches = match_curves(closed, default_spec)
        # one curve per ellipse, the sub-pixel center pair included
        assert sorted(index for index, _ in matches) == list(range(default_spec.geometry.M))
        assert max(distance for _, distance in matches) <= 2 * PIXEL
        assert _worst_curve_distance(result.curves, default_spec) <= 2 * PIXEL
