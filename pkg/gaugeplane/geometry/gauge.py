"""Gauge and dual gauge evaluation, dual bodies and the antipode map

The dual body of K is K^w = {v : w(v, z) <= 1 for all z in K}, so its gauge
is the dual gauge g_w(v) = max over z in K of w(v, z). For polygons the
maximum runs over vertices; for a rounded polygon it is attained at a core
vertex plus eps times the length of the gradient of z -> w(v, z).
"""
import logging
import threading
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import minimize_scalar

from .core import (STANDARD_FORM, TOL_DEGENERATE, TWO_PI,
                   DegenerateSystem, GeometryError, RoundedPolygon, ZeroVector,
                   angle_of, area, as_vec, cross, hausdorff_distance, inradius,
                   ray_boundary, rotate90, rounded_ray_parameters, unit_vector,
                   validate_polygon)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplingConfig:
    """Sampling parameters for bodies without exact piecewise algorithms

    Parameters
    ----------
    samples : int
        Samples per boundary piece or sector before refinement
    xatol : float
        Absolute parameter tolerance of the bounded scalar refinement
    quad_rtol : float
        Relative change between successive Simpson refinements at which the
        polar quadrature stops
    max_level : int
        Largest refinement level k (2^k intervals per smooth piece)
    """
    samples: int = 64
    xatol: float = 1e-9
    quad_rtol: float = 1e-9
    max_level: int = 16


class GaugeContext(object):
    def __init__(self, body, form=STANDARD_FORM, sampling=None):
        """A unit disk paired with a symplectic form

        Parameters
        ----------
        body : ConvexPolygon or RoundedPolygon
            Validated unit disk. A rounded polygon with radius 0 is replaced
            by its core
        form : SymplecticForm, optional
            Symplectic form, by default the standard determinant
        sampling : SamplingConfig, optional
            Sampling settings for rounded bodies
        """
        if isinstance(body, RoundedPolygon) and body.radius == 0:
            body = body.core
        self.body = body
        self.form = form
        self.sampling = sampling if sampling is not None else SamplingConfig()
        self.core = body.core
        self.radius = body.radius
        self.normals = self.core.normals
        self.offsets = self.core.offsets
        self.area = area(body, form)
        self._dual = None
        self._dual_lock = threading.Lock()

    def __repr__(self):
        return (f'GaugeContext(body={self.body!r}, '
                f'omega_scale={self.form.scale!r})')

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_dual_lock'] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._dual_lock = threading.Lock()

    @property
    def is_polygon(self):
        return self.radius == 0

    @property
    def dual(self):
        """Dual body, built on first access"""
        if self._dual is None:
            with self._dual_lock:
                if self._dual is None:
                    self._dual = dual_body(self)
        return self._dual


class DualBody(object):
    def __init__(self, source, polygon, area, boundary):
        """Dual body K^w of a gauge context

        Parameters
        ----------
        source : GaugeContext
            Context of K
        polygon : ConvexPolygon or None
            Exact dual polygon when K is a polygon, None otherwise
        area : float
            Symplectic area of K^w
        boundary : np.ndarray, shape (m, 2)
            Boundary points of K^w (the vertices for a polygon, a dense
            polyline otherwise)
        """
        self.source = source
        self.polygon = polygon
        self.area = area
        self.boundary = boundary

    def __repr__(self):
        kind = 'polygon' if self.polygon is not None else 'implicit'
        return f'DualBody({kind}, area={self.area!r})'

    def gauge(self, v):
        """Gauge of K^w, which is the dual gauge of K"""
        return dual_gauge_eval(self.source, v)


def gauge_eval(ctx, x):
    """Gauge g_K(x) = inf{a >= 0 : x in aK}

    Parameters
    ----------
    ctx : GaugeContext
        Gauge context
    x : array-like, shape (2,) or (m, 2)
        One vector or a stack of vectors

    Returns
    -------
    float or np.ndarray
        Gauge values, 0 for the zero vector
    """
    X = np.asarray(x, dtype=float)
    single = X.ndim == 1
    X = np.atleast_2d(X)
    if ctx.is_polygon:
        g = np.maximum(np.max(X @ ctx.normals.T / ctx.offsets, axis=1), 0.0)
    else:
        g = np.zeros(len(X))
        nonzero = np.any(X != 0, axis=1)
        if np.any(nonzero):
            t, _ = rounded_ray_parameters(ctx.body, X[nonzero])
            g[nonzero] = 1.0 / t
    return float(g[0]) if single else g


def dual_gauge_eval(ctx, v):
    """Dual gauge g_w(v) = max over z in K of w(v, z)"""
    V = np.asarray(v, dtype=float)
    single = V.ndim == 1
    V = np.atleast_2d(V)
    s = ctx.form.scale
    vals = s * cross(V[:, None, :], ctx.core.vertices[None, :, :])
    g = vals.max(axis=1)
    if ctx.radius > 0:
        g = g + ctx.radius * abs(s) * np.hypot(V[:, 0], V[:, 1])
    return float(g[0]) if single else g


def _dual_polygon(ctx):
    V = ctx.core.vertices
    U = np.roll(V, -1, axis=0)
    s = ctx.form.scale
    scale = np.hypot(V[:, 0], V[:, 1]) * np.hypot(U[:, 0], U[:, 1])
    if np.any(np.abs(cross(V, U)) <= TOL_DEGENERATE * scale):
        i = int(np.argmin(np.abs(cross(V, U)) / scale))
        raise DegenerateSystem(f'vertices {i} and {i + 1} are parallel '
                               'through the origin')

    # rows of w(w, v) = 1 and w(w, u) = 1 as a . w = 1, b . w = 1
    a = s * np.column_stack([V[:, 1], -V[:, 0]])
    b = s * np.column_stack([U[:, 1], -U[:, 0]])
    det = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    w = np.column_stack([(b[:, 1] - a[:, 1]) / det,
                         (a[:, 0] - b[:, 0]) / det])

    # straight vertices give the same dual vertex twice
    keep = np.ones(len(w), dtype=bool)
    w_scale = max(1.0, float(np.abs(w).max()))
    for i in range(len(w)):
        j = (i + 1) % len(w)
        if keep[j] and np.all(np.abs(w[i] - w[j]) <= TOL_DEGENERATE * w_scale):
            keep[i] = False
    return validate_polygon(w[keep])


def _kink_angles(ctx):
    edges = ctx.core.edges
    kinks = np.concatenate([angle_of(edges), angle_of(-edges)])
    return np.unique(kinks)


def _simpson_refined(func, lo, hi, sampling):
    prev = None
    for level in range(2, sampling.max_level + 1):
        theta = np.linspace(lo, hi, 2 ** level + 1)
        val = float(simpson(func(theta), x=theta))
        if prev is not None and abs(val - prev) <= sampling.quad_rtol * abs(val):
            return val
        prev = val
    warnings.warn(f'polar quadrature on [{lo:.6f}, {hi:.6f}] did not reach '
                  f'rtol={sampling.quad_rtol} at level {sampling.max_level}')
    return val


def polar_area(gauge, breakpoints, form, sampling):
    """Symplectic area of a unit disk from its gauge

    Evaluates |s|/2 times the integral of g(u(theta))^-2 over a full turn,
    split at `breakpoints` so that every Simpson integral has a smooth
    integrand.
    """
    angles = np.unique(np.mod(np.asarray(breakpoints, dtype=float), TWO_PI))
    if len(angles) == 0:
        angles = np.array([0.0])
    ends = np.append(angles[1:], angles[0] + TWO_PI)

    def integrand(theta):
        return gauge(unit_vector(theta)) ** -2.0

    total = 0.0
    for lo, hi in zip(angles, ends):
        if hi - lo > TOL_DEGENERATE:
            total += _simpson_refined(integrand, lo, hi, sampling)
    return 0.5 * abs(form.scale) * total


def dual_body(ctx):
    """Construct the dual body K^w

    For a polygon, dual vertex i solves w(w, v_i) = 1 and w(w, v_{i+1}) = 1.
    For a rounded polygon the dual is kept implicit through the closed-form
    dual gauge; its area comes from polar quadrature and its boundary is
    sampled for display.

    Raises
    ------
    DegenerateSystem
        Two consecutive vertices are parallel through the origin
    """
    if ctx.is_polygon:
        polygon = _dual_polygon(ctx)
        return DualBody(ctx, polygon, area(polygon, ctx.form),
                        polygon.vertices)

    logger.info('Integrating dual area of %r', ctx.body)

    def gauge(u):
        return dual_gauge_eval(ctx, u)

    kinks = _kink_angles(ctx)
    dual_area = polar_area(gauge, kinks, ctx.form, ctx.sampling)
    theta = np.union1d(np.linspace(0, TWO_PI, 1024, endpoint=False), kinks)
    u = unit_vector(theta)
    boundary = u / gauge(u)[:, None]
    return DualBody(ctx, None, dual_area, boundary)


def dual_context(ctx):
    """Gauge context of the dual polygon, with the same symplectic form"""
    if not ctx.is_polygon:
        raise GeometryError('the dual of a rounded body is not a polygon')
    return GaugeContext(ctx.dual.polygon, ctx.form, ctx.sampling)


def antipode_p(ctx, x):
    """Antipode p(x) = -x / g(-x) with its boundary locus

    Raises
    ------
    ZeroVector
        x is the zero vector
    """
    x = as_vec(x)
    if not np.any(x):
        raise ZeroVector('antipode of the zero vector is undefined')
    return ray_boundary(ctx.body, -x)


def dual_normalize(ctx, x):
    """Normalize x in the dual gauge, mapping directions onto the boundary
    of K^w"""
    x = as_vec(x)
    if not np.any(x):
        raise ZeroVector('cannot normalize the zero vector')
    return x / dual_gauge_eval(ctx, x)


def gauge_distance(ctx, a, b):
    """Gauge distance d(a, b) = g(b - a), generally not symmetric"""
    return gauge_eval(ctx, as_vec(b) - as_vec(a))


def sandwich_constant(body):
    """Smallest alpha with B contained in alpha * body"""
    return 1.0 / (inradius(body.core) + body.radius)


@dataclass(frozen=True)
class GaugeAxiomReport:
    samples: int
    nondegeneracy: float
    homogeneity: float
    subadditivity: float

    @property
    def max_violation(self):
        return max(self.nondegeneracy, self.homogeneity, self.subadditivity)


def check_gauge_axioms(ctx, samples=1000, seed=0):
    """Measure violations of the gauge axioms on seeded random vectors

    Checks g(0) = 0 and g(x) > 0 for x != 0, positive homogeneity
    g(ax) = a g(x) for a >= 0, and subadditivity g(x + y) <= g(x) + g(y).
    Violations are relative to max(1, |value|).

    Returns
    -------
    GaugeAxiomReport
        Largest violation of each axiom
    """
    if samples < 1:
        raise ValueError('samples must be >= 1')
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(samples, 2)) * rng.uniform(0.1, 10, size=(samples, 1))
    y = rng.normal(size=(samples, 2)) * rng.uniform(0.1, 10, size=(samples, 1))
    a = rng.uniform(0, 10, size=samples)

    gx = gauge_eval(ctx, x)
    gy = gauge_eval(ctx, y)
    nondeg = max(abs(gauge_eval(ctx, np.zeros(2))),
                 float(np.max(np.maximum(-gx, 0))),
                 1.0 if np.any(gx <= 0) else 0.0)

    gax = gauge_eval(ctx, a[:, None] * x)
    homog = float(np.max(np.abs(gax - a * gx) / np.maximum(1, a * gx)))

    gxy = gauge_eval(ctx, x + y)
    subadd = float(np.max(np.maximum(gxy - gx - gy, 0)
                          / np.maximum(1, gx + gy)))
    return GaugeAxiomReport(samples, nondeg, homog, subadd)


def dual_hausdorff(ctx_a, ctx_b, samples=2048, xatol=1e-12):
    """Hausdorff distance between the dual bodies of two contexts

    Exact dual polygons are compared directly. Otherwise the support
    function of K^w, h(u) = g_K(sign(s) R u) / |s| with R the quarter turn,
    is compared on a grid of directions and the best grid cell is refined.
    """
    if ctx_a.form.scale != ctx_b.form.scale:
        raise GeometryError('dual bodies must share the symplectic form')
    if ctx_a.is_polygon and ctx_b.is_polygon:
        return hausdorff_distance(ctx_a.dual.polygon, ctx_b.dual.polygon)

    s = ctx_a.form.scale

    def diff(theta):
        d = np.sign(s) * rotate90(unit_vector(theta))
        return np.abs(gauge_eval(ctx_a, d) - gauge_eval(ctx_b, d)) / abs(s)

    theta = np.linspace(0, TWO_PI, samples, endpoint=False)
    vals = diff(theta)
    k = int(np.argmax(vals))
    step = TWO_PI / samples
    res = minimize_scalar(lambda t: -float(diff(np.array([t]))[0]),
                          bounds=(theta[k] - step, theta[k] + step),
                          method='bounded', options={'xatol': xatol})
    return max(float(vals[k]), -float(res.fun))

