"""Two-sided gauge bounds for Hausdorff-close bodies

If the unit disk B lies in alpha P and d_H(P, L) = eps < 1 / alpha, then
with delta = alpha eps / (1 - alpha eps)

    g_P(x) / (1 + delta) <= g_L(x) <= (1 + delta) g_P(x)

for every x.
"""
import numpy as np

from ..geometry.core import GeometryError, hausdorff_distance
from ..geometry.gauge import GaugeContext, gauge_eval, sandwich_constant
from ..geometry.generators import BodySpec, jitter, rounded
from .base_experiment import BaseExperiment

MODES = ('identity', 'rounded', 'jitter')


def sandwich_delta(alpha, eps):
    if alpha * eps >= 1:
        raise GeometryError(f'eps = {eps:.3g} is not below 1/alpha = '
                            f'{1 / alpha:.3g}')
    return alpha * eps / (1 - alpha * eps)


def sandwich_violation(P, L, points):
    """Largest relative violation of the two-sided bound on `points`

    Returns
    -------
    float, float, float
        The violation, the measured Hausdorff distance and delta
    """
    alpha = sandwich_constant(P)
    eps = hausdorff_distance(P, L)
    delta = sandwich_delta(alpha, eps)
    g_p = gauge_eval(GaugeContext(P), points)
    g_l = gauge_eval(GaugeContext(L), points)
    excess = np.maximum(g_p / (1 + delta) - g_l, g_l - (1 + delta) * g_p)
    violation = float(np.max(np.maximum(excess, 0) / np.maximum(1, g_p)))
    return violation, eps, delta


class SandwichExperiment(BaseExperiment):
    """Trials cycle through L = P, L = rounded(P, eps) and a vertex jitter
    of P by eps; a jitter that breaks convexity falls back to rounding"""

    name = 'sandwich'
    tolerance = 1e-9

    def __init__(self, trials=50, seed=0, n_jobs=1, verbose=False, eps=1e-3,
                 points=1000):
        super().__init__(trials, seed, n_jobs, verbose)
        self.eps = eps
        self.points = points

    def trial(self, index, seed):
        rng = np.random.default_rng(seed)
        spec = BodySpec('random', {'n': 5 + index % 8, 'seed': seed})
        P = spec.materialize()
        mode = MODES[index % 3]
        if mode == 'identity':
            L = P
        elif mode == 'jitter':
            try:
                L = jitter(P, self.eps, seed)
            except GeometryError:
                mode, L = 'rounded', rounded(P, self.eps)
        else:
            L = rounded(P, self.eps)

        x = rng.normal(size=(self.points, 2))
        violation, eps, delta = sandwich_violation(P, L, x)
        return {'body': spec.to_dict(), 'mode': mode, 'hausdorff': eps,
                'alpha': sandwich_constant(P), 'delta': delta,
                'residual': violation}


def run_sandwich(trials=50, seed=0, n_jobs=1, verbose=False):
    return SandwichExperiment(trials, seed, n_jobs, verbose).run()
