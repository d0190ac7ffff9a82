"""hypothesis strategies for bodies, vectors and linear maps"""
import warnings

import numpy as np
from hypothesis import assume, strategies as st

from gaugeplane.geometry.generators import random_convex_polygon, rounded


@st.composite
def polygons(draw, min_vertices=3, max_vertices=12):
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    seed = draw(st.integers(min_value=0, max_value=2**31 - 1))
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        return random_convex_polygon(n, seed)


@st.composite
def rounded_polygons(draw, max_vertices=8):
    core = draw(polygons(max_vertices=max_vertices))
    eps = draw(st.floats(min_value=0.01, max_value=0.5))
    return rounded(core, eps)


@st.composite
def vectors(draw, bound=10.0, min_norm=1e-3):
    x = draw(st.floats(min_value=-bound, max_value=bound))
    y = draw(st.floats(min_value=-bound, max_value=bound))
    v = np.array([x, y])
    assume(np.hypot(x, y) >= min_norm)
    return v


@st.composite
def angles(draw):
    return draw(st.floats(min_value=0.0, max_value=2 * np.pi,
                          exclude_max=True))


@st.composite
def linear_maps(draw, min_det=0.1):
    entries = st.floats(min_value=-2.0, max_value=2.0)
    T = np.array([[draw(entries), draw(entries)],
                  [draw(entries), draw(entries)]])
    assume(abs(np.linalg.det(T)) >= min_det)
    return T
