import math

import pytest

from src.config import settings
from src.filters import FilterParams, filter_constants
from src.loaders import load_phantom
from src.phantom import EllipseSpec, PhantomSpec, PolyCurveSpec, sample_phantom

PHANTOM_DIR = settings.PHANTOM_DIR
M = 6
PIXEL = 1 / 2**M


def _unit_disk(radius: float = 1.0, center=(0.0, 0.0)) -> EllipseSpec:
    # validation skipped: the disk need not fit the unit square
    return EllipseSpec.model_construct(center=center, a=radius, b=radius, phi=0.0, amplitude=1.0)


def _bare_scene(*ellipses: EllipseSpec) -> PhantomSpec:
    return PhantomSpec.model_construct(ellipses=list(ellipses), texture=[], polycurves=[], geometry=None)


@pytest.fixture
def make_disk():
    return _unit_disk


@pytest.fixture
def bare_scene():
    return _bare_scene


@pytest.fixture(scope="session")
def default_spec() -> PhantomSpec:
    return load_phantom(PHANTOM_DIR / "default.phantom")


@pytest.fixture(scope="session")
def default_grid(default_spec):
    return sample_phantom(default_spec, M)


@pytest.fixture(scope="session")
def default_params(default_spec) -> FilterParams:
    """k_tex = 32 pi, k_max = 64 pi, alpha = pi/16 on the 64 x 64 grid."""
    g = default_spec.geometry
    return FilterParams(
        k_tex=32 * math.pi,
        k_max=64 * math.pi,
        alpha=math.pi / 16,
        num_angles=16,
        kappa_low=g.kappa_low,
        kappa_bar=g.kappa_bar,
    )


@pytest.fixture(scope="session")
def default_constants(default_params, default_spec):
    return filter_constants(default_params, default_spec)


@pytest.fixture(scope="session")
def disk_spec() -> PhantomSpec:
    return load_phantom(PHANTOM_DIR / "disk.phantom")


@pytest.fixture(scope="session")
def square_spec() -> PhantomSpec:
    return PhantomSpec(polycurves=[PolyCurveSpec.square((0.5, 0.5), 0.4)])


@pytest.fixture(scope="session")
def square_grid(square_spec):
    return sample_phantom(square_spec, M)
