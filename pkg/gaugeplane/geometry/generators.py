"""Body generators: the sharpness hexagons, rounded bodies, random polygons
and derived bodies"""
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .core import (DegenerateSample, GeometryError, NonPositiveAlpha,
                   RoundedPolygon, TooFewVertices, as_vec, inradius,
                   unit_vector, validate_polygon)

MIN_INRADIUS = 0.05
MAX_ATTEMPTS = 100


def hexagon(alpha, corner_shift=0.0):
    """Hexagon with vertices A(0,1), B(-1,0), C(-1,-1), D(0,-1), E(alpha,0)
    and F = (alpha/(1+alpha)) (1, 1)

    F lies on segment AE where CF is parallel to AB, so F is a straight
    vertex. A nonzero `corner_shift` eta moves A to (eta, 1+eta) along line
    AB and D to (eta, -1), and puts F on the line y = x where it meets the
    new segment EA; CF stays parallel to AB.

    Raises
    ------
    NonPositiveAlpha
        alpha is not a finite positive number
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise NonPositiveAlpha(f'alpha must be positive, got {alpha}')
    eta = float(corner_shift)
    if not math.isfinite(eta) or eta < 0:
        raise GeometryError(f'corner_shift must be >= 0, got {eta}')
    f = alpha * (1 + eta) / (1 + alpha)
    return validate_polygon([(eta, 1 + eta), (-1, 0), (-1, -1), (eta, -1),
                             (alpha, 0), (f, f)])


def rounded(core, eps):
    """Minkowski sum of `core` with the disk of radius `eps`; rounding a
    rounded body adds the radii"""
    return RoundedPolygon(core.core, core.radius + eps)


def regular(n, scale=1.0):
    """Regular n-gon inscribed in the circle of radius `scale`"""
    if n < 3:
        raise TooFewVertices(f'a polygon needs at least 3 vertices, got {n}')
    theta = 2 * np.pi * np.arange(n) / n
    return validate_polygon(scale * unit_vector(theta))


def _sample_polygon(rng, n):
    pts = rng.uniform(-1, 1, size=(n + 8, 2))
    try:
        hull = ConvexHull(pts)
    except QhullError as e:
        raise DegenerateSample('random points have a flat hull') from e
    idx = hull.vertices
    if len(idx) > n:
        idx = idx[np.sort(rng.choice(len(idx), size=n, replace=False))]
    v = pts[idx]
    offset = rng.uniform(-0.3, 0.3, size=2)
    v = v - v.mean(axis=0) + offset
    polygon = validate_polygon(v)
    if inradius(polygon) < MIN_INRADIUS:
        raise DegenerateSample(f'inradius {inradius(polygon):.3g} is below '
                               f'{MIN_INRADIUS}')
    return polygon


def random_convex_polygon(n, seed):
    """Seeded random convex polygon containing the origin

    Takes the hull of n + 8 uniform points of [-1, 1]^2, keeps a seeded
    subset of n hull vertices when the hull has more, and moves the vertex
    centroid to a seeded offset in [-0.3, 0.3]^2. Samples with an inradius
    about the origin below 0.05 are retried.

    Parameters
    ----------
    n : int
        Target number of vertices, at least 3. Hulls of fewer than n
        vertices are kept as they are
    seed : int or np.random.SeedSequence
        Random seed

    Returns
    -------
    ConvexPolygon
        The sampled polygon

    Raises
    ------
    DegenerateSample
        No valid sample after 100 attempts
    """
    if n < 3:
        raise TooFewVertices(f'a polygon needs at least 3 vertices, got {n}')
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_ATTEMPTS):
        try:
            return _sample_polygon(rng, n)
        except GeometryError as e:
            warnings.warn(f'Random polygon sample {attempt} rejected: {e}')
    raise DegenerateSample(f'no valid polygon after {MAX_ATTEMPTS} attempts '
                           f'(n={n}, seed={seed})')


def _keep_radius(body, core):
    return rounded(core, body.radius) if body.radius > 0 else core


def symmetrize(body):
    """Convex hull of the body and its negative, a centrally symmetric body

    A rounded body keeps its radius: the disk is symmetric, so rounding the
    symmetrized core gives the same body.
    """
    v = body.core.vertices
    pts = np.concatenate([v, -v])
    hull = ConvexHull(pts)
    return _keep_radius(body, validate_polygon(pts[hull.vertices]))


def reanchor(body, origin):
    """Move the origin to `origin`, which must be interior to the core; a
    rounded body keeps its radius

    Raises
    ------
    OriginNotInterior
        `origin` is on the boundary or outside
    """
    return _keep_radius(body,
                        validate_polygon(body.core.vertices - as_vec(origin)))


def jitter(body, magnitude, seed, hull=False):
    """Move every vertex by `magnitude` along a seeded unit direction

    The directions depend on the seed only, so a sequence of magnitudes with
    one seed converges to the input as magnitude -> 0. With `hull`, the
    convex hull of the moved vertices is returned, which stays within
    Hausdorff distance `magnitude` of the input even when a vertex turns
    reflex. A rounded body keeps its radius.
    """
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0, 2 * np.pi, size=len(body.core))
    v = body.core.vertices + magnitude * unit_vector(theta)
    if hull:
        v = v[ConvexHull(v).vertices]
    return _keep_radius(body, validate_polygon(v))


def perturb_vertex(body, index, delta):
    """Move a single core vertex by the vector `delta`"""
    v = body.core.vertices.copy()
    v[index] += as_vec(delta)
    return _keep_radius(body, validate_polygon(v))


@dataclass(frozen=True)
class BodySpec:
    """Serializable recipe for a body

    `kind` is one of 'polygon', 'hexagon', 'random', 'regular',
    'symmetrized', 'reanchored' or 'rounded'. Nested recipes ('symmetrized',
    'reanchored', 'rounded') keep their inner recipe as a BodySpec under
    `params['body']`. A 'radius' parameter rounds any recipe, adding to the
    radius a nested rounded recipe already carries.
    """
    kind: str
    params: dict = field(default_factory=dict)

    def _base(self):
        p = self.params
        if self.kind == 'polygon':
            return validate_polygon(p['vertices'])
        if self.kind == 'hexagon':
            return hexagon(p['alpha'], p.get('corner_shift', 0.0))
        if self.kind == 'random':
            return random_convex_polygon(p['n'], p['seed'])
        if self.kind == 'regular':
            return regular(p['n'], p.get('scale', 1.0))
        if self.kind == 'symmetrized':
            return symmetrize(p['body'].materialize())
        if self.kind == 'reanchored':
            return reanchor(p['body'].materialize(), p['origin'])
        if self.kind == 'rounded':
            return p['body'].materialize()
        raise GeometryError(f'unknown body kind {self.kind!r}')

    def materialize(self):
        body = self._base()
        radius = float(self.params.get('radius', 0.0))
        if radius > 0 or self.kind == 'rounded':
            body = rounded(body, radius)
        return body

    def to_dict(self):
        out = {'type': self.kind}
        for key, value in self.params.items():
            out[key] = value.to_dict() if isinstance(value, BodySpec) else value
        return out
