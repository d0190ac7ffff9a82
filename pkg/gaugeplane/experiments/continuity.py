"""Continuity of duals, boundary maps and constants in the Hausdorff metric

Four sequences K_n -> K are followed for n = 4, 8, ..., 512, all built on
one seeded random polygon P scaled to inradius at least 0.75:

- 'rounding':         rounded(P, eps0 + 1/n) -> rounded(P, eps0)
- 'jitter':           rounded(jitter(P, 1/n), eps0) -> rounded(P, eps0)
- 'polygon_rounding': rounded(P, 1/n) -> P
- 'polygon_jitter':   jitter(P, 1/n) -> P

The smooth sequences track the dual Hausdorff distance, the three constants
and b+ along a fixed ray. Both polygon sequences track the dual Hausdorff
distance and c_in; the jitter one also follows a+ and a- for a fixed
direction. c_out needs a smooth limit and is left out there.
"""
import numpy as np

from ..geometry.asymmetry import constant
from ..geometry.core import inradius, unit_vector, validate_polygon
from ..geometry.gauge import GaugeContext, dual_hausdorff
from ..geometry.generators import jitter, random_convex_polygon, rounded
from ..geometry.orthogonality import b_plus, support_pair
from .base_experiment import BaseExperiment
from .utils import nonmonotone_steps

DEFAULT_NS = tuple(2 ** k for k in range(2, 10))
SEQUENCES = ('rounding', 'jitter', 'polygon_rounding', 'polygon_jitter')
SMOOTH_QUANTITIES = ('dual_hausdorff', 'c_out', 'c_in', 'c_hat_out', 'b_plus')
POLYGON_QUANTITIES = ('dual_hausdorff', 'c_in', 'a_pm')
MIN_BASE_INRADIUS = 0.75
MAX_NONMONOTONE = 2


def base_polygon(seed, n=6):
    """Seeded random polygon scaled up to inradius at least 0.75"""
    P = random_convex_polygon(n, seed)
    r = inradius(P)
    if r < MIN_BASE_INRADIUS:
        P = validate_polygon(P.vertices * (MIN_BASE_INRADIUS / r))
    return P


def _limit_values(ctx, quantities, direction):
    values = {}
    for q in quantities:
        if q.startswith('c_'):
            values[q] = constant(ctx, {'c_out': 'out', 'c_in': 'in',
                                       'c_hat_out': 'hat'}[q]).value
        elif q == 'b_plus':
            values[q] = b_plus(ctx, direction)
        elif q == 'a_pm':
            values[q] = support_pair(ctx, direction)
    return values


def _residual(q, ctx_n, ctx, limit, direction):
    if q == 'dual_hausdorff':
        return dual_hausdorff(ctx_n, ctx)
    if q == 'b_plus':
        return float(np.hypot(*(b_plus(ctx_n, direction) - limit[q])))
    if q == 'a_pm':
        lo, hi = support_pair(ctx_n, direction)
        return float(max(np.hypot(*(lo - limit[q][0])),
                         np.hypot(*(hi - limit[q][1]))))
    which = {'c_out': 'out', 'c_in': 'in', 'c_hat_out': 'hat'}[q]
    return abs(constant(ctx_n, which).value - limit[q])


def track_sequence(bodies, limit, quantities, direction):
    """Residuals of each quantity along a sequence of bodies

    Parameters
    ----------
    bodies : list
        Bodies K_n in order of increasing n
    limit : ConvexPolygon or RoundedPolygon
        The limit body K
    quantities : sequence of str
        Names from 'dual_hausdorff', 'c_out', 'c_in', 'c_hat_out',
        'b_plus' and 'a_pm'
    direction : np.ndarray
        Fixed ray or direction for the boundary maps

    Returns
    -------
    dict
        Quantity name to the list of residuals
    """
    ctx = GaugeContext(limit)
    values = _limit_values(ctx, quantities, direction)
    series = {q: [] for q in quantities}
    for body in bodies:
        ctx_n = GaugeContext(body)
        for q in quantities:
            series[q].append(_residual(q, ctx_n, ctx, values, direction))
    return series


class ContinuityExperiment(BaseExperiment):
    """One trial per sequence, all sharing the base polygon of the master
    seed"""

    name = 'continuity'
    tolerance = 1e-2

    def __init__(self, seed=0, ns=DEFAULT_NS, eps0=0.1, n_jobs=1,
                 verbose=False):
        self.ns = tuple(int(n) for n in ns)
        self.eps0 = eps0
        super().__init__(len(SEQUENCES), seed, n_jobs, verbose)

    def _sequence(self, name, P):
        jitter_seed = self.seed + 1
        if name == 'rounding':
            bodies = [rounded(P, self.eps0 + 1 / n) for n in self.ns]
            return bodies, rounded(P, self.eps0), SMOOTH_QUANTITIES
        if name == 'jitter':
            bodies = [rounded(jitter(P, 1 / n, jitter_seed, hull=True),
                              self.eps0) for n in self.ns]
            return bodies, rounded(P, self.eps0), SMOOTH_QUANTITIES
        if name == 'polygon_rounding':
            bodies = [rounded(P, 1 / n) for n in self.ns]
            return bodies, P, ('dual_hausdorff', 'c_in')
        bodies = [jitter(P, 1 / n, jitter_seed, hull=True) for n in self.ns]
        return bodies, P, POLYGON_QUANTITIES

    def trial(self, index, seed):
        name = SEQUENCES[index]
        P = base_polygon(self.seed)
        rng = np.random.default_rng(self.seed)
        direction = unit_vector(rng.uniform(0, 2 * np.pi))
        bodies, limit, quantities = self._sequence(name, P)
        series = track_sequence(bodies, limit, quantities, direction)

        final = {q: float(v[-1]) for q, v in series.items()}
        steps = {q: nonmonotone_steps(v) for q, v in series.items()}
        residual = max(final.values())
        if max(steps.values()) > MAX_NONMONOTONE:
            residual += 1
        return {'sequence': name, 'ns': list(self.ns),
                'series': {q: [float(x) for x in v]
                           for q, v in series.items()},
                'final': final, 'nonmonotone': steps,
                'residual': residual}

    def make_series(self, records):
        out = {}
        for r in records:
            for q, values in r['series'].items():
                out[f"{r['sequence']}/{q}"] = list(zip(r['ns'], values))
        return out


def run_continuity(seed=0, ns=DEFAULT_NS, n_jobs=1, verbose=False):
    return ContinuityExperiment(seed, ns, n_jobs=n_jobs,
                                verbose=verbose).run()
