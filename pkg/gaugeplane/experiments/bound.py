"""The bound c_out < 2 and its sharpness on rounded hexagons

For rounded(hexagon(alpha, corner_shift=eps), eps) the outer constant is
close to (2 alpha + 1) / (alpha + 1.5), which tends to 2 as alpha grows.
The suite passes when every value stays below 2, the values increase with
alpha, and each value clears both the envelope 2 - 5 / (alpha + 1.5) and
the sharpness ratio less 1e-2.
"""
from ..geometry.asymmetry import c_out
from ..geometry.gauge import GaugeContext
from ..geometry.generators import BodySpec
from .base_experiment import BaseExperiment

DEFAULT_ALPHAS = (1.0, 3.0, 10.0, 50.0)
SHARPNESS_SLACK = 1e-2


def sharpness_ratio(alpha):
    """(2 alpha + 1) / (alpha + 1.5), the outer asymmetry of the sharp
    hexagon family"""
    return (2 * alpha + 1) / (alpha + 1.5)


def lower_envelope(alpha):
    return 2 - 5 / (alpha + 1.5)


def _bound_violation(value):
    return 1 + (value - 2) if value >= 2 else 0.0


class BoundExperiment(BaseExperiment):
    """One trial per alpha; the seed is unused since the bodies are fixed"""

    name = 'bound'
    tolerance = 0.0

    def __init__(self, alphas=DEFAULT_ALPHAS, eps=1e-3, seed=0, n_jobs=1,
                 verbose=False):
        if eps <= 0:
            raise ValueError('eps must be positive')
        self.alphas = sorted(float(a) for a in alphas)
        self.eps = float(eps)
        super().__init__(len(self.alphas), seed, n_jobs, verbose)

    def trial(self, index, seed):
        alpha = self.alphas[index]
        spec = BodySpec('hexagon', {'alpha': alpha, 'corner_shift': self.eps,
                                    'radius': self.eps})
        report = c_out(GaugeContext(spec.materialize()))
        value = report.value
        ratio = sharpness_ratio(alpha)
        return {
            'body': spec.to_dict(),
            'alpha': alpha,
            'c_out': value,
            'ratio': ratio,
            'witness': [float(c) for c in report.witness],
            'residual': max(lower_envelope(alpha) - value,
                            ratio - SHARPNESS_SLACK - value,
                            _bound_violation(value), 0.0),
        }

    def residual(self, records):
        worst = super().residual(records)
        values = [r['c_out'] for r in records]
        for lo, hi in zip(values, values[1:]):
            worst = max(worst, lo - hi)
        return worst

    def make_series(self, records):
        return {'c_out': [(r['alpha'], r['c_out']) for r in records]}


def run_bound_and_sharpness(alphas=DEFAULT_ALPHAS, eps=1e-3, n_jobs=1,
                            verbose=False):
    return BoundExperiment(alphas, eps, n_jobs=n_jobs, verbose=verbose).run()
