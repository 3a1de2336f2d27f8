import math
from types import SimpleNamespace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.asymptotics import (
    arc_length_between_angles,
    asymptotic_error_report,
    geometry_constant,
    leading_order_ft,
    remainder_decay_slope,
    stationary_points,
)
from src.phantom import EllipseSpec, PhantomGeometry

K_TEX = 32 * math.pi
K_MAX = 64 * math.pi


def unit_circle_scene():
    geometry = PhantomGeometry(
        M=1, delta=None, kappa_low=1.0, kappa_bar=1.0, rho_low=1.0, rho_bar=1.0,
        gamma3_sup=1.0, total_arclength=2 * math.pi, arclengths=[2 * math.pi],
    )
    return SimpleNamespace(geometry=geometry)


class TestStationaryPoints:
    def test_unit_circle(self, make_disk):
        plus, minus = stationary_points(make_disk(), (2.0, 0.0))
        assert_allclose(plus.position, [1.0, 0.0], atol=1e-15)
        assert_allclose(minus.position, [-1.0, 0.0], atol=1e-15)
        assert plus.curvature == pytest.approx(1.0)
        assert_allclose(plus.tangent, [0.0, 1.0], atol=1e-15)
        assert plus.t == 0.0
        assert minus.t == pytest.approx(math.pi)
        assert minus.tau == pytest.approx(math.pi)

    def test_rotated_ellipse(self):
        e = EllipseSpec(center=(0.3, 0.58), a=0.11, b=0.09, phi=0.4, amplitude=1.0)
        direction = np.array([math.cos(1.1), math.sin(1.1)])
        for point, sign in zip(stationary_points(e, direction, curve_id=3), (1, -1)):
            assert point.curve_id == 3
            assert abs(point.tangent @ direction) < 1e-12
            assert_allclose(point.normal, sign * direction)
            u, v = e.to_local(point.position)
            assert (u / e.a) ** 2 + (v / e.b) ** 2 == pytest.approx(1.0)
            assert e.kappa_range[0] - 1e-9 <= point.curvature <= e.kappa_range[1] + 1e-9

    def test_zero_direction(self, make_disk):
        with pytest.raises(ValueError):
            stationary_points(make_disk(), (0.0, 0.0))


class TestLeadingOrder:
    def test_disk_closed_form(self, disk_spec):
        radius, center = 0.25, np.array([0.5, 0.5])
        for r in [150.0, 400.0, 1200.0]:
            k = r * np.array([math.cos(0.7), math.sin(0.7)])
            expected = (
                np.exp(1j * k @ center) * 2 * math.sqrt(2 * math.pi * radius)
                * r**-1.5 * math.cos(r * radius - 0.75 * math.pi)
            )
            assert abs(leading_order_ft(disk_spec, k) - expected) < 1e-12

    def test_vectorized(self, default_spec):
        k = np.full((4, 3, 2), 300.0)
        assert leading_order_ft(default_spec, k).shape == (4, 3)

    def test_below_texture_band(self, default_spec):
        with pytest.raises(ValueError):
            leading_order_ft(default_spec, (10.0, 0.0), k_tex=K_TEX)

    def test_polygon_scene(self, square_spec):
        with pytest.raises(ValueError, match="polygons"):
            leading_order_ft(square_spec, (300.0, 0.0))


class TestRemainder:
    @pytest.mark.parametrize("scene", ["disk_spec", "default_spec"])
    def test_scaled_error_within_geometry_constant(self, scene, request):
        spec = request.getfixturevalue(scene)
        bound = geometry_constant(spec).C_geo
        report = asymptotic_error_report(spec, (1.0, 1.0), np.geomspace(K_TEX, 8 * K_MAX, 200))
        assert max(s.scaled_error for s in report) <= bound

    def test_disk_remainder_decays(self, disk_spec):
        slope = remainder_decay_slope(disk_spec, (1.0, 1.0), 100.0, 3000.0)
        assert -1.3 < slope < -0.4

    def test_decay_arguments(self, disk_spec):
        with pytest.raises(ValueError):
            remainder_decay_slope(disk_spec, (1.0, 0.0), 500.0, 100.0)
        with pytest.raises(ValueError):
            remainder_decay_slope(disk_spec, (1.0, 0.0), 100.0, 500.0, windows=1)


class TestGeometryConstant:
    def test_unit_circle(self):
        expected = 4 + 8 / math.pi + 2 * math.sqrt(2) + 6 * math.pi
        assert geometry_constant(unit_circle_scene()).C_geo == pytest.approx(expected)
        assert expected == pytest.approx(28.2245, abs=1e-4)

    def test_disk_matches_unit_circle(self, disk_spec):
        # C_geo is invariant under scaling
        assert geometry_constant(disk_spec).C_geo == pytest.approx(28.2245, rel=1e-4)

    def test_polygon_scene(self, square_spec):
        with pytest.raises(ValueError, match="singular"):
            geometry_constant(square_spec)

    def test_arclength_bounds(self):
        assert arc_length_between_angles(2.0, 4.0, math.pi) == pytest.approx((math.pi / 4, math.pi / 2))
        with pytest.raises(ValueError):
            arc_length_between_angles(0.0, 4.0, 1.0)
