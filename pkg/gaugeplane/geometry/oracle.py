"""Brute-force reference computations

Everything here works from point membership and dense boundary sampling
only: gauges by bisection, orthogonality by minimizing g(x + t y) over a
grid of t, support points by enumeration and asymmetry constants by finite
differences along a sampled boundary. None of it calls the exact kernels it
is compared against, and none of it is used outside the test suite and the
verification experiments.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, minimize_scalar


@dataclass(frozen=True)
class OracleConfig:
    """Sampling sizes of the reference computations

    Parameters
    ----------
    boundary_samples : int
        Boundary points (rounded up to an even number so that every sample
        has its antipode on the grid)
    t_grid : int
        Grid points of t in [-2, 2] for the orthogonality check
    refine_iters : int
        Iterations of the bounded refinement around the best grid point
    tol : float
        Decision tolerance of the orthogonality check
    """
    boundary_samples: int = 10000
    t_grid: int = 401
    refine_iters: int = 60
    tol: float = 1e-9

    def __post_init__(self):
        for name in ('boundary_samples', 't_grid', 'refine_iters', 'tol'):
            if not getattr(self, name) > 0:
                raise ValueError(f'{name} must be positive')


DEFAULT_ORACLE = OracleConfig()


def _excess(ctx, pts):
    """Signed distance-like measure, <= 0 exactly on the body"""
    pts = np.atleast_2d(pts)
    V = ctx.core.vertices
    E = np.roll(V, -1, axis=0) - V
    L = np.hypot(E[:, 0], E[:, 1])
    rel = pts[:, None, :] - V[None, :, :]
    # outward distance to every edge line
    side = -(E[None, :, 0] * rel[..., 1] - E[None, :, 1] * rel[..., 0]) / L
    outside = side.max(axis=1)
    if ctx.radius == 0:
        return outside
    # distance to the core polygon, then offset by the radius
    t = np.clip(np.einsum('mnk,nk->mn', rel, E) / (L ** 2), 0, 1)
    closest = V[None] + t[..., None] * E[None]
    d = np.hypot(*(pts[:, None, :] - closest).transpose(2, 0, 1)).min(axis=1)
    d = np.where(outside <= 0, 0.0, d)
    return d - ctx.radius


def contains(ctx, pts):
    return _excess(ctx, pts) <= 0


def gauge_bisect(ctx, x, xtol=1e-12):
    """g(x) = inf{a >= 0 : x in aK} by bisection on membership of x / a"""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    hi = 1.0
    while not contains(ctx, x / hi)[0]:
        hi *= 2
    lo = hi / 2
    while contains(ctx, x / lo)[0]:
        lo /= 2
    return bisect(lambda a: float(_excess(ctx, x / a)[0]), lo, hi,
                  xtol=xtol * hi)


def gauge_bisect_many(ctx, X, xtol=1e-12):
    """Vectorized bisection for a stack of vectors"""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    zero = ~np.any(X, axis=1)
    if np.any(zero):
        out = np.zeros(len(X))
        if not np.all(zero):
            out[~zero] = gauge_bisect_many(ctx, X[~zero], xtol)
        return out
    hi = np.ones(len(X))
    while True:
        out = ~contains(ctx, X / hi[:, None])
        if not np.any(out):
            break
        hi[out] *= 2
    lo = hi / 2
    while True:
        inside = contains(ctx, X / lo[:, None])
        if not np.any(inside):
            break
        lo[inside] /= 2
    while np.any(hi - lo > xtol * hi):
        mid = 0.5 * (lo + hi)
        inside = contains(ctx, X / mid[:, None])
        hi = np.where(inside, mid, hi)
        lo = np.where(inside, lo, mid)
    return 0.5 * (lo + hi)


def orthogonality_grid(ctx, x, y, cfg=DEFAULT_ORACLE):
    """Definitional check of x -| y: g(x + t y) >= g(x) for t in [-2, 2]

    x is scaled onto the boundary and y to unit length, g(x + t y) is
    evaluated on `cfg.t_grid` values of t, and the smallest grid value is
    refined with a bounded scalar search. g(x + t y) is convex in t, so the
    local minimum is global.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x = x / gauge_bisect(ctx, x)
    y = y / np.hypot(*y)
    t = np.linspace(-2, 2, cfg.t_grid)
    vals = gauge_bisect_many(ctx, x[None] + t[:, None] * y[None])
    k = int(np.argmin(vals))
    lo, hi = t[max(k - 1, 0)], t[min(k + 1, len(t) - 1)]
    res = minimize_scalar(lambda s: gauge_bisect(ctx, x + s * y),
                          bounds=(lo, hi), method='bounded',
                          options={'xatol': 1e-12,
                                   'maxiter': cfg.refine_iters})
    return min(float(vals[k]), float(res.fun)) >= 1 - cfg.tol


@dataclass(frozen=True, eq=False)
class BoundarySample:
    """Boundary points at n equally spaced polar angles, n even

    Drawn once per reference computation and handed to its helpers.
    """
    theta: np.ndarray
    points: np.ndarray

    @classmethod
    def of(cls, ctx, cfg=DEFAULT_ORACLE):
        n = _even(cfg.boundary_samples)
        theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        u = np.column_stack([np.cos(theta), np.sin(theta)])
        return cls(theta, u / gauge_bisect_many(ctx, u)[:, None])

    def __len__(self):
        return len(self.theta)


def _support_points(ctx, sample):
    z = sample.points
    if ctx.radius == 0:
        z = np.concatenate([ctx.core.vertices, z])
    return z


def _even(n):
    return n + (n % 2)


def _sampled_area(ctx, sample):
    z = sample.points
    r2 = np.einsum('ij,ij->i', z, z)
    return 0.5 * abs(ctx.form.scale) * r2.sum() * 2 * np.pi / len(sample)


def dual_gauge_sampled(ctx, v, cfg=DEFAULT_ORACLE, sample=None):
    """max of w(v, z) over sampled boundary points z

    `sample` reuses a boundary sample of `ctx`; by default one is drawn
    with `cfg`.
    """
    if sample is None:
        sample = BoundarySample.of(ctx, cfg)
    V = np.atleast_2d(np.asarray(v, dtype=float))
    z = _support_points(ctx, sample)
    out = np.empty(len(V))
    for i in range(0, len(V), 512):
        chunk = V[i:i + 512]
        w = ctx.form.scale * (chunk[:, None, 0] * z[None, :, 1]
                              - chunk[:, None, 1] * z[None, :, 0])
        out[i:i + 512] = w.max(axis=1)
    return float(out[0]) if np.ndim(v) == 1 else out


def _chord_through_origin(ctx, u):
    """b = u / g(u) + u / g(-u) for unit directions u"""
    return (u / gauge_bisect_many(ctx, u)[:, None]
            + u / gauge_bisect_many(ctx, -u)[:, None])


def _sampled_b(ctx, sample):
    z = sample.points
    fwd = np.roll(z, -1, axis=0) - z
    bwd = z - np.roll(z, 1, axis=0)
    if ctx.radius == 0:
        tangent = fwd
        norm = np.hypot(*fwd.T) * np.hypot(*bwd.T)
        smooth = np.abs(fwd[:, 0] * bwd[:, 1] - fwd[:, 1] * bwd[:, 0]) \
            <= 1e-6 * norm
    else:
        tangent = fwd + bwd
        smooth = np.ones(len(sample), dtype=bool)
    u = tangent / np.hypot(*tangent.T)[:, None]
    flip = ctx.form.scale * (z[:, 0] * u[:, 1] - z[:, 1] * u[:, 0]) < 0
    u[flip] *= -1
    return _chord_through_origin(ctx, u), smooth


def constant_sampled(ctx, which, cfg=DEFAULT_ORACLE):
    """Largest |f| over a dense boundary sample

    'out' and 'hat' take tangents from finite differences of the sampled
    boundary and skip polygon samples where the forward and backward secants
    disagree (corners). 'in' enumerates support points for every sampled
    direction. The result is a lower bound of the constant that converges
    as the sample grows.
    """
    if which not in ('out', 'in', 'hat'):
        raise ValueError(f'unknown asymmetry function {which!r}')
    sample = BoundarySample.of(ctx, cfg)
    n = len(sample)
    s = ctx.form.scale
    half = n // 2

    if which == 'in':
        d = np.column_stack([np.cos(sample.theta), np.sin(sample.theta)])
        z = _support_points(ctx, sample)
        best = 0.0
        for i in range(0, n, 256):
            chunk = d[i:i + 256]
            w = s * (chunk[:, None, 0] * z[None, :, 1]
                     - chunk[:, None, 1] * z[None, :, 0])
            a_lo = z[np.argmin(w, axis=1)]
            a_hi = z[np.argmax(w, axis=1)]
            f = s * (a_lo[:, 0] * a_hi[:, 1] - a_lo[:, 1] * a_hi[:, 0])
            best = max(best, float(np.abs(f).max()))
        return best / _sampled_area(ctx, sample)

    b, smooth = _sampled_b(ctx, sample)
    if which == 'hat':
        b = -b
        b = b / dual_gauge_sampled(ctx, b, sample=sample)[:, None]
        theta = 2 * np.pi * (np.arange(2048) + 0.5) / 2048
        u = np.column_stack([np.cos(theta), np.sin(theta)])
        g = dual_gauge_sampled(ctx, u, sample=sample)
        area = 0.5 * abs(s) * np.sum(g ** -2.0) * 2 * np.pi / len(theta)
    else:
        area = _sampled_area(ctx, sample)
    b_p = np.roll(b, -half, axis=0)
    ok = smooth & np.roll(smooth, -half)
    f = s * (b[:, 0] * b_p[:, 1] - b[:, 1] * b_p[:, 0]) / area
    return float(np.abs(f[ok]).max())
