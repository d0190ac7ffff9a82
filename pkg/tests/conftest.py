import os
import warnings

import pytest

from gaugeplane.geometry.core import validate_polygon
from gaugeplane.geometry.gauge import GaugeContext
from gaugeplane.geometry.generators import (hexagon, random_convex_polygon,
                                            rounded)


@pytest.fixture
def rootdir():
    return os.path.dirname(os.path.abspath(__file__))


@pytest.fixture
def data_dir(rootdir):
    return os.path.join(rootdir, 'data')


@pytest.fixture
def square():
    return validate_polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])


@pytest.fixture
def triangle():
    return validate_polygon([(1, 0), (0, 1), (-1, -1)])


@pytest.fixture
def rectangle():
    """[-0.5, 1.5] x [-1, 1], off-center about the origin"""
    return validate_polygon([(1.5, -1), (1.5, 1), (-0.5, 1), (-0.5, -1)])


@pytest.fixture
def hexagon1():
    return hexagon(1.0)


@pytest.fixture
def rounded_square(square):
    return rounded(square, 0.5)


@pytest.fixture
def square_ctx(square):
    return GaugeContext(square)


@pytest.fixture
def triangle_ctx(triangle):
    return GaugeContext(triangle)


@pytest.fixture
def rounded_square_ctx(rounded_square):
    return GaugeContext(rounded_square)


@pytest.fixture
def random_polygons():
    """Ten seeded random polygons with 5 to 12 vertices"""
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        return [random_convex_polygon(5 + i % 8, 100 + i) for i in range(10)]
