"""Asymmetry functions and constants of a gauge

Three functions measure how far a gauge is from being a norm:

- f_out(x) = w(b(x), b(p(x))) / area(K), from the supporting lines at x and
  at its antipode p(x);
- f_in(x) = w(a+(x), a-(x)) / area(K), from the two support points of the
  functional z -> w(x, z);
- f_hat_out(x) = w(b_hat(x), b_hat(p(x))) / area(K^w), with b_hat(x) the
  normalization -b(x) / g_w(-b(x)) of b onto the dual boundary.

Each constant is the supremum of |f| over the boundary. On polygons every f
is piecewise constant, so evaluating one midpoint per piece is exact. Rounded
polygons are sampled per piece and the best sample is refined.
"""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.optimize import brentq, minimize_scalar

from .core import (TOL_DEGENERATE, TWO_PI, GeometryError, NoSignChangeFound,
                   angle_of, rotate90, rounded_ray_parameters,
                   signed_area, unit_vector)
from .gauge import antipode_p, dual_gauge_eval, gauge_eval
from .orthogonality import (b_map, b_minus, b_plus, is_orthogonal,
                            support_pair, to_boundary_point)

logger = logging.getLogger(__name__)

KINDS = ('out', 'in', 'hat')
CONSTANT_NAMES = {'out': 'c_out', 'in': 'c_in', 'hat': 'c_hat_out'}


@dataclass(frozen=True)
class Piece:
    """An open boundary arc [start, end] of polar angles with the value of f
    at its midpoint angle"""
    start: float
    end: float
    midpoint: float
    value: float
    constant: bool


@dataclass(frozen=True, eq=False)
class PieceDecomposition:
    """Circular list of breakpoint angles and the pieces between them

    For a polygon the breakpoints are the directions of the vertices and of
    their antipodes, so that x and p(x) stay on fixed edges inside a piece.
    """
    breakpoints: np.ndarray
    pieces: tuple

    @property
    def values(self):
        return np.array([p.value for p in self.pieces])

    @property
    def midpoints(self):
        return np.array([p.midpoint for p in self.pieces])


class SectorDecomposition(PieceDecomposition):
    """Direction sectors between the 2n angles of the edge directions +-e_i,
    on which a+ and a- are fixed vertices"""


@dataclass(frozen=True, eq=False)
class AsymmetryReport:
    """Value of one asymmetry constant with the point attaining it

    `witness` is the boundary point x (for 'out' and 'hat') or the unit
    direction (for 'in') where |f| is largest, and `witness_angle` its polar
    angle. `method` is 'exact-piecewise' or 'sampled'; sampled reports give
    the refinement tolerance in `tolerance`.
    """
    which: str
    value: float
    witness: np.ndarray
    witness_angle: float
    method: str
    samples: int
    tolerance: float
    n_pieces: int
    pieces: tuple = ()

    @property
    def name(self):
        return CONSTANT_NAMES[self.which]

    def to_dict(self, include_pieces=True):
        out = {
            'constant': self.name,
            'value': self.value,
            'witness': [float(c) for c in self.witness],
            'witness_angle': self.witness_angle,
            'method': self.method,
            'samples': self.samples,
            'tolerance': self.tolerance,
            'n_pieces': self.n_pieces,
        }
        if include_pieces:
            out['pieces'] = [{'start': p.start, 'end': p.end,
                              'value': p.value} for p in self.pieces]
        return out


def _check_kind(which):
    if which not in KINDS:
        raise ValueError(f'unknown asymmetry function {which!r}, expected '
                         f'one of {KINDS}')


# Vectorized evaluation over stacks of directions D of shape (m, 2). Callers
# keep D away from breakpoints.

def _oriented_tangents(ctx, D):
    core = ctx.core
    if ctx.is_polygon:
        idx = np.argmax(D @ core.normals.T / core.offsets, axis=1)
        T = core.edges[idx].copy()
    else:
        t, k = rounded_ray_parameters(ctx.body, D)
        n = len(core)
        T = np.empty_like(D)
        on_edge = k < n
        T[on_edge] = core.edges[k[on_edge]]
        arc = ~on_edge
        Q = t[arc, None] * D[arc]
        T[arc] = rotate90(Q - core.vertices[k[arc] - n])
    T /= np.hypot(T[:, 0], T[:, 1])[:, None]
    flip = ctx.form(D, T) < 0
    T[flip] *= -1
    return T


def _b_many(ctx, D):
    U = _oriented_tangents(ctx, D)
    scale = 1.0 / gauge_eval(ctx, U) + 1.0 / gauge_eval(ctx, -U)
    return U * scale[:, None]


def _b_hat_many(ctx, D):
    B = -_b_many(ctx, D)
    return B / dual_gauge_eval(ctx, B)[:, None]


def _support_many(ctx, D):
    V = ctx.core.vertices
    vals = ctx.form(D[:, None, :], V[None, :, :])
    lo = V[np.argmin(vals, axis=1)].copy()
    hi = V[np.argmax(vals, axis=1)].copy()
    if ctx.radius > 0:
        g = ctx.form.scale * rotate90(D)
        g /= np.hypot(g[:, 0], g[:, 1])[:, None]
        lo -= ctx.radius * g
        hi += ctx.radius * g
    return lo, hi


def evaluate_many(ctx, which, theta):
    """Evaluate f_out, f_in or f_hat_out at the polar angles `theta`

    No smoothness or uniqueness checks are made, so angles must avoid the
    breakpoints of the matching decomposition.
    """
    _check_kind(which)
    D = unit_vector(np.atleast_1d(np.asarray(theta, dtype=float)))
    if which == 'out':
        return ctx.form(_b_many(ctx, D), _b_many(ctx, -D)) / ctx.area
    if which == 'hat':
        return (ctx.form(_b_hat_many(ctx, D), _b_hat_many(ctx, -D))
                / ctx.dual.area)
    lo, hi = _support_many(ctx, D)
    return ctx.form(lo, hi) / ctx.area


def f_out(ctx, x):
    """Outer asymmetry function w(b(x), b(p(x))) / area(K)

    Parameters
    ----------
    ctx : GaugeContext
        Gauge context
    x : BoundaryPoint or array-like
        Boundary point, or a nonzero vector standing for its ray

    Raises
    ------
    NonSmoothPoint
        x or p(x) is a corner of a polygon
    """
    bp = to_boundary_point(ctx, x)
    b_x = b_map(ctx, bp)
    b_p = b_map(ctx, antipode_p(ctx, bp.point))
    return float(ctx.form(b_x, b_p)) / ctx.area


def b_hat(ctx, x):
    """Normalized map -b(x) / g_w(-b(x)), a point of the dual boundary"""
    b = -b_map(ctx, x)
    return b / dual_gauge_eval(ctx, b)


def f_hat_out(ctx, x):
    """Normalized outer asymmetry w(b_hat(x), b_hat(p(x))) / area(K^w)"""
    bp = to_boundary_point(ctx, x)
    h_x = b_hat(ctx, bp)
    h_p = b_hat(ctx, antipode_p(ctx, bp.point))
    return float(ctx.form(h_x, h_p)) / ctx.dual.area


def f_in(ctx, direction):
    """Inner asymmetry function w(a+(x), a-(x)) / area(K)

    Raises
    ------
    SupportNotUnique
        `direction` is parallel to an edge
    """
    lo, hi = support_pair(ctx, direction)
    return float(ctx.form(lo, hi)) / ctx.area


def _merge_angles(angles):
    a = np.sort(np.mod(np.asarray(angles, dtype=float), TWO_PI))
    keep = np.ones(len(a), dtype=bool)
    keep[1:] = np.diff(a) > TOL_DEGENERATE
    a = a[keep]
    if len(a) > 1 and a[0] + TWO_PI - a[-1] <= TOL_DEGENERATE:
        a = a[:-1]
    return a


def breakpoint_angles(ctx, which='out'):
    """Polar angles at which f_out, f_hat_out or f_in may jump or kink"""
    _check_kind(which)
    core = ctx.core
    if which == 'in':
        return _merge_angles(np.concatenate([angle_of(core.edges),
                                             angle_of(-core.edges)]))
    if ctx.is_polygon:
        pts = core.vertices
    else:
        pts = ctx.body.junctions()
    a = angle_of(pts)
    return _merge_angles(np.concatenate([a, a + np.pi]))


def _piece_bounds(breaks):
    return breaks, np.append(breaks[1:], breaks[0] + TWO_PI)


def _constant_pieces(ctx, mids):
    if ctx.is_polygon:
        return np.ones(len(mids), dtype=bool)
    D = unit_vector(mids)
    n = len(ctx.core)
    _, k_x = rounded_ray_parameters(ctx.body, D)
    _, k_p = rounded_ray_parameters(ctx.body, -D)
    return (k_x < n) & (k_p < n)


def decompose(ctx, which='out'):
    """Split the boundary into pieces at the breakpoints of f

    Returns
    -------
    PieceDecomposition or SectorDecomposition
        Sectors for 'in', pieces otherwise, each with its midpoint value
    """
    breaks = breakpoint_angles(ctx, which)
    lo, hi = _piece_bounds(breaks)
    mids = 0.5 * (lo + hi)
    values = evaluate_many(ctx, which, mids)
    if which == 'in':
        constant = np.full(len(mids), ctx.is_polygon)
    else:
        constant = _constant_pieces(ctx, mids)
    pieces = tuple(Piece(float(a), float(b), float(m), float(v), bool(c))
                   for a, b, m, v, c in zip(lo, hi, mids, values, constant))
    cls = SectorDecomposition if which == 'in' else PieceDecomposition
    return cls(breaks, pieces)


def _witness(ctx, which, theta):
    u = unit_vector(theta)
    if which == 'in':
        return u
    return u / gauge_eval(ctx, u)


def _exact_constant(ctx, which, dec):
    vals = np.abs(dec.values)
    i = int(np.argmax(vals))
    theta = dec.pieces[i].midpoint
    return AsymmetryReport(which, float(vals[i]), _witness(ctx, which, theta),
                           float(np.mod(theta, TWO_PI)), 'exact-piecewise',
                           len(dec.pieces), 0.0, len(dec.pieces),
                           dec.pieces)


def _sampled_constant(ctx, which, dec):
    m = ctx.sampling.samples
    thetas, owner = [], []
    for i, p in enumerate(dec.pieces):
        if p.constant:
            thetas.append(np.array([p.midpoint]))
        else:
            k = (np.arange(m) + 0.5) / m
            thetas.append(p.start + k * (p.end - p.start))
        owner.append(np.full(len(thetas[-1]), i))
    thetas = np.concatenate(thetas)
    owner = np.concatenate(owner)
    vals = np.abs(evaluate_many(ctx, which, thetas))
    j = int(np.argmax(vals))
    best, best_theta = float(vals[j]), float(thetas[j])

    piece = dec.pieces[owner[j]]
    if not piece.constant:
        h = (piece.end - piece.start) / m
        lo = max(piece.start, best_theta - h)
        hi = min(piece.end, best_theta + h)
        res = minimize_scalar(
            lambda t: -abs(float(evaluate_many(ctx, which, t)[0])),
            bounds=(lo, hi), method='bounded',
            options={'xatol': ctx.sampling.xatol})
        if -res.fun > best:
            best, best_theta = float(-res.fun), float(res.x)

    return AsymmetryReport(which, best, _witness(ctx, which, best_theta),
                           float(np.mod(best_theta, TWO_PI)), 'sampled',
                           len(thetas), ctx.sampling.xatol, len(dec.pieces),
                           dec.pieces)


def constant(ctx, which='out'):
    """Supremum of |f| over the boundary for f = f_out, f_in or f_hat_out

    Polygons are exact: f is constant on every piece and the report lists
    all pieces. Rounded polygons sample `ctx.sampling.samples` angles per
    piece that is not constant and refine the best sample with a bounded
    scalar search.

    Returns
    -------
    AsymmetryReport
        The constant and its witness
    """
    dec = decompose(ctx, which)
    logger.info('Computing %s of %r over %d pieces', CONSTANT_NAMES[which],
                ctx.body, len(dec.pieces))
    if ctx.is_polygon:
        return _exact_constant(ctx, which, dec)
    return _sampled_constant(ctx, which, dec)


def c_out(ctx):
    return constant(ctx, 'out')


def c_in(ctx):
    return constant(ctx, 'in')


def c_hat_out(ctx):
    return constant(ctx, 'hat')


def outer_quadrilateral(ctx, x):
    """The points b+(x), b-(p(x)), b-(x), b+(p(x)) whose quadrilateral has
    half the diagonal cross product |w(b(x), b(p(x)))| / |s| as area"""
    bp = to_boundary_point(ctx, x)
    pp = antipode_p(ctx, bp.point)
    return np.array([b_plus(ctx, bp), b_minus(ctx, pp),
                     b_minus(ctx, bp), b_plus(ctx, pp)])


def quadrilateral_area(points):
    """Lebesgue area of four points taken in angular order about the
    origin"""
    pts = np.asarray(points, dtype=float)
    if pts.shape != (4, 2):
        raise GeometryError('a quadrilateral needs four 2-vectors')
    return abs(signed_area(pts[np.argsort(angle_of(pts))]))


def asymmetry_profile(ctx, which='out', n=720):
    """f sampled at n equally spaced boundary angles

    Samples that fall on a breakpoint of a polygon are dropped, because f is
    not defined there.

    Returns
    -------
    pd.DataFrame
        Columns 'parameter' (polar angle in [0, 2*pi)) and 'value'
    """
    _check_kind(which)
    if n < 1:
        raise ValueError('n must be >= 1')
    theta = TWO_PI * np.arange(n) / n
    if ctx.is_polygon:
        breaks = breakpoint_angles(ctx, which)
        gap = np.abs(theta[:, None] - breaks[None, :])
        gap = np.minimum(gap, TWO_PI - gap)
        theta = theta[gap.min(axis=1) > 1e-9]
    return pd.DataFrame({'parameter': theta,
                         'value': evaluate_many(ctx, which, theta)})


def _verified(ctx, x, y):
    for z in (x, -x):
        ok, witness = is_orthogonal(ctx, z, y)
        if not ok:
            raise GeometryError('common orthogonal pair failed verification '
                                f'(residual {witness.equality_residual:.3g})')
    return x, y


def _interpolated_root(u_lo, u_hi, v_lo, v_hi, form):
    def g(t):
        return float(form((1 - t) * u_lo + t * u_hi, (1 - t) * v_lo + t * v_hi))
    t = brentq(g, 0.0, 1.0, xtol=1e-15)
    return t


def _sign_change(values):
    s = np.sign(values)
    nxt = np.roll(s, -1)
    hits = np.flatnonzero(s * nxt < 0)
    if len(hits) == 0:
        raise NoSignChangeFound('asymmetry function has no sign change')
    return int(hits[0])


def _common_orthogonal_out_polygon(ctx, dec):
    vals = dec.values
    zero = np.flatnonzero(np.abs(vals) <= 1e-12)
    if len(zero):
        x = _witness(ctx, 'out', dec.pieces[zero[0]].midpoint)
        return x, b_plus(ctx, x)
    i = _sign_change(vals)
    left, right = dec.pieces[i], dec.pieces[(i + 1) % len(dec.pieces)]
    D = unit_vector(np.array([left.midpoint, right.midpoint]))
    U_x = _oriented_tangents(ctx, D)
    U_p = _oriented_tangents(ctx, -D)
    t = _interpolated_root(U_x[0], U_x[1], U_p[0], U_p[1], ctx.form)
    x = _witness(ctx, 'out', left.end)
    y = (1 - t) * U_x[0] + t * U_x[1]
    return x, y


def _breakpoint_supports(ctx, left_mid, right_mid, theta):
    """Support points on both sides of a sector breakpoint, with the disk
    offset taken at the breakpoint direction itself"""
    V = ctx.core.vertices
    D = unit_vector(np.array([left_mid, right_mid]))
    vals = ctx.form(D[:, None, :], V[None, :, :])
    lo = V[np.argmin(vals, axis=1)].copy()
    hi = V[np.argmax(vals, axis=1)].copy()
    if ctx.radius > 0:
        g = ctx.form.scale * rotate90(unit_vector(theta))
        g /= np.hypot(*g)
        lo -= ctx.radius * g
        hi += ctx.radius * g
    return lo, hi


def _common_orthogonal_in(ctx, dec, per_sector):
    # samples in boundary order, tagged with their sector
    k = (np.arange(per_sector) + 0.5) / per_sector
    theta = np.concatenate([p.start + k * (p.end - p.start)
                            for p in dec.pieces])
    owner = np.repeat(np.arange(len(dec.pieces)), per_sector)
    vals = evaluate_many(ctx, 'in', theta)
    zero = np.flatnonzero(np.abs(vals) <= 1e-12)
    if len(zero):
        d = unit_vector(theta[zero[0]])
        return support_pair(ctx, d)[0], d

    j = _sign_change(vals)
    j_next = (j + 1) % len(theta)
    if owner[j] == owner[j_next]:
        t = brentq(lambda a: float(evaluate_many(ctx, 'in', a)[0]),
                   theta[j], theta[j_next], xtol=1e-15)
        d = unit_vector(t)
        return support_pair(ctx, d)[0], d

    edge = dec.pieces[owner[j]].end
    lo, hi = _breakpoint_supports(ctx, theta[j], theta[j_next], edge)
    t = _interpolated_root(lo[0], lo[1], hi[0], hi[1], ctx.form)
    return (1 - t) * lo[0] + t * lo[1], unit_vector(edge)


def _scan_root(ctx, which, theta0, samples=257):
    theta = theta0 + np.linspace(0.0, np.pi, samples)
    vals = evaluate_many(ctx, which, theta)
    exact = np.flatnonzero(vals == 0)
    if len(exact):
        return float(theta[exact[0]])
    change = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    if len(change) == 0:
        if np.all(np.abs(vals) <= 1e-12):
            return float(theta0)
        raise NoSignChangeFound(f'no sign change of f_{which} on a half turn')
    k = int(change[0])
    return brentq(lambda t: float(evaluate_many(ctx, which, t)[0]),
                  theta[k], theta[k + 1], xtol=1e-15)


def find_common_orthogonal(ctx, kind='out'):
    """Find x on the boundary and a direction y with x -| y and -x -| y

    'out' looks for a zero of f_out, where the supporting lines at x and
    p(x) are parallel; 'in' looks for a zero of f_in, where a+ and a- lie on
    a line through the origin. Polygons bracket a sign change between two
    neighbouring pieces and solve for the zero along the support data
    interpolated across the breakpoint between them. On a rounded body
    f_out is continuous and is solved directly; f_in is solved inside a
    sector or interpolated across a sector breakpoint, where it jumps.

    Returns
    -------
    np.ndarray, np.ndarray
        x and y, both checked with `is_orthogonal` for x and -x

    Raises
    ------
    NoSignChangeFound
        f has no sign change and is not identically zero
    """
    if kind not in ('out', 'in'):
        raise ValueError(f"kind must be 'out' or 'in', got {kind!r}")
    dec = decompose(ctx, kind)
    if kind == 'in':
        per_sector = 1 if ctx.is_polygon else 16
        return _verified(ctx, *_common_orthogonal_in(ctx, dec, per_sector))
    if ctx.is_polygon:
        return _verified(ctx, *_common_orthogonal_out_polygon(ctx, dec))

    # f_out is continuous on a rounded body; start the scan inside a piece
    theta = _scan_root(ctx, 'out', dec.pieces[0].midpoint)
    x = _witness(ctx, 'out', theta)
    return _verified(ctx, x, b_plus(ctx, x))


def quadrilateral_residual(ctx, x):
    """| |f_out(x)| - 2 |s| area(quadrilateral) / area(K) |"""
    quad = outer_quadrilateral(ctx, x)
    expected = 2 * abs(ctx.form.scale) * quadrilateral_area(quad) / ctx.area
    return abs(abs(f_out(ctx, x)) - expected)
