import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.phantom import GaussianSpec, PhantomSpec, phantom_image, sample_phantom
from src.spectral import (
    Convention,
    ImageGrid,
    SpectralGrid,
    add_noise,
    energy,
    forward_transform,
    inverse_transform,
    make_grid,
)


@pytest.mark.parametrize("m", [2, 13, 6.5, True])
def test_make_grid_rejects_bad_exponent(m):
    with pytest.raises(ValueError):
        make_grid(m)


def test_lattice_geometry():
    grid = make_grid(4)
    assert grid.side == 16
    assert grid.k_max == pytest.approx(2 * math.pi * 8)
    assert grid.index_of((0, 0)) == (8, 8)
    assert grid.index_of((-8, 7)) == (0, 15)
    assert_allclose(grid.k_vectors[grid.index_of((3, -2))], [6 * math.pi, -4 * math.pi])
    assert grid.k_theta[grid.index_of((0, 0))] == 0.0
    assert grid.k_theta[grid.index_of((0, -1))] == pytest.approx(1.5 * math.pi)
    with pytest.raises(ValueError):
        grid.index_of((8, 0))


def test_samples_are_read_only():
    grid = make_grid(3)
    with pytest.raises(ValueError):
        grid.samples[0, 0] = 1.0


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        SpectralGrid(3, np.zeros((4, 4)))


def test_single_mode_inverts_to_plane_wave():
    m = 4
    samples = np.zeros((16, 16), dtype=complex)
    grid = make_grid(m)
    samples[grid.index_of((1, 2))] = 1.0
    image = inverse_transform(grid.with_samples(samples))
    x, y = image.points[..., 0], image.points[..., 1]
    assert_allclose(image.samples, np.exp(-2j * np.pi * (x + 2 * y)), atol=1e-12)


def test_theorem_raw_scales_by_cell_area():
    rng = np.random.default_rng(0)
    grid = make_grid(4).with_samples(rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16)))
    calibrated = inverse_transform(grid, Convention.CALIBRATED)
    raw = inverse_transform(grid, "theorem-raw")
    assert_allclose(raw.samples, (2 * np.pi) ** 2 * calibrated.samples, rtol=1e-12)


def test_unknown_convention():
    with pytest.raises(ValueError, match="Available"):
        inverse_transform(make_grid(3), "unitary")


@pytest.mark.parametrize("convention", list(Convention))
def test_forward_undoes_inverse(convention):
    rng = np.random.default_rng(1)
    grid = make_grid(5).with_samples(rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32)))
    back = forward_transform(inverse_transform(grid, convention), convention)
    assert_allclose(back.samples, grid.samples, atol=1e-12)


def test_parseval(default_grid):
    image = inverse_transform(default_grid)
    pixel_energy = np.sum(np.abs(image.samples) ** 2) / 4**default_grid.m
    assert pixel_energy == pytest.approx(energy(default_grid), rel=1e-10)


def test_band_limited_texture_reconstructs_exactly():
    spec = PhantomSpec(texture=[GaussianSpec(center=(0.5, 0.5), sigma=0.06, amplitude=1.0)])
    image = inverse_transform(sample_phantom(spec, 6))
    assert_allclose(image.samples.real, phantom_image(spec, image.points), atol=1e-8)
    assert np.max(np.abs(image.samples.imag)) < 1e-8


def test_image_grid_coordinates():
    image = ImageGrid(3, np.zeros((8, 8)))
    assert image.pitch == 1 / 8
    assert_allclose(image.coordinates, (np.arange(8) + 0.5) / 8)
    assert_allclose(image.points[2, 5], [2.5 / 8, 5.5 / 8])


def _random_grid(m: int, seed: int):
    rng = np.random.default_rng(seed)
    side = 2**m
    return make_grid(m).with_samples(rng.standard_normal((side, side)) + 1j * rng.standard_normal((side, side)))


@pytest.mark.parametrize("convention", list(Convention))
def test_inverse_is_linear(convention):
    f, g = _random_grid(5, 2), _random_grid(5, 3)
    a, b = 0.7 - 1.3j, -2.5
    combined = inverse_transform(f.with_samples(a * f.samples + b * g.samples), convention)
    expected = a * inverse_transform(f, convention).samples + b * inverse_transform(g, convention).samples
    assert_allclose(combined.samples, expected, rtol=1e-12, atol=1e-9)


def test_disjoint_supports_are_orthogonal():
    grid = _random_grid(5, 4)
    inner = make_grid(5).k_r < 16 * np.pi
    low = inverse_transform(grid.with_samples(np.where(inner, grid.samples, 0)))
    high = inverse_transform(grid.with_samples(np.where(inner, 0, grid.samples)))
    overlap = abs(np.vdot(low.samples, high.samples))
    assert overlap < 1e-10 * np.linalg.norm(low.samples) * np.linalg.norm(high.samples)


class TestNoise:
    def grid(self):
        rng = np.random.default_rng(3)
        return make_grid(5).with_samples(rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32)))

    @pytest.mark.parametrize("level", [0.025, 0.05, 0.1])
    def test_energy_ratio_is_exact(self, level):
        grid = self.grid()
        noisy = add_noise(grid, level, seed=11)
        noise = grid.with_samples(noisy.samples - grid.samples)
        assert energy(noise) / energy(grid) == pytest.approx(level**2, rel=1e-10)

    def test_seed_reproducible(self):
        grid = self.grid()
        assert_allclose(add_noise(grid, 0.05, 4).samples, add_noise(grid, 0.05, 4).samples)
        assert not np.allclose(add_noise(grid, 0.05, 4).samples, add_noise(grid, 0.05, 5).samples)

    def test_zero_level_is_identity(self):
        grid = self.grid()
        assert add_noise(grid, 0.0, 1) is grid

    def test_zero_signal_untouched(self):
        grid = make_grid(3)
        assert energy(add_noise(grid, 0.1, 1)) == 0.0

    def test_negative_level(self):
        with pytest.raises(ValueError):
            add_noise(self.grid(), -0.01, 1)
