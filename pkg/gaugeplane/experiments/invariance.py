"""Invariance of the asymmetry constants under invertible linear maps

For T with det T != 0, the image T(P) has the same c_out, c_in and
c_hat_out as P. Pointwise, f_out and f_hat_out at Tx equal sign(det T) times
their value at x, while f_in is unchanged. The dual body transforms as
dual(T P) = T dual(P) / det T.
"""
import numpy as np

from ..geometry.asymmetry import constant, decompose, evaluate_many, KINDS
from ..geometry.core import angle_of, apply_linear, unit_vector, \
    validate_polygon, vertex_deviation
from ..geometry.gauge import GaugeContext
from ..geometry.generators import BodySpec
from .base_experiment import BaseExperiment
from .utils import random_linear_map


def invariance_residuals(polygon, T):
    """Residuals of the constants, the pointwise relations and the dual
    body transformation between `polygon` and its image under `T`"""
    mapped = apply_linear(T, polygon)
    ctx = GaugeContext(polygon)
    ctx_t = GaugeContext(mapped.polygon)
    out = {'det': mapped.det}

    for which in KINDS:
        a, b = constant(ctx, which).value, constant(ctx_t, which).value
        out[f'{which}_residual'] = abs(a - b)

    sign = mapped.orientation
    pointwise = 0.0
    n_pieces = 0
    for which, factor in (('out', sign), ('hat', sign), ('in', 1)):
        mids = decompose(ctx, which).midpoints
        images = angle_of(unit_vector(mids) @ np.asarray(T).T)
        diff = (evaluate_many(ctx_t, which, images)
                - factor * evaluate_many(ctx, which, mids))
        pointwise = max(pointwise, float(np.abs(diff).max()))
        n_pieces = max(n_pieces, len(mids))
    out['pointwise_residual'] = pointwise
    out['n_pieces'] = n_pieces

    expected = validate_polygon(ctx.dual.polygon.vertices @ np.asarray(T).T
                                / mapped.det)
    out['dual_residual'] = float(vertex_deviation(ctx_t.dual.polygon,
                                                  expected))
    return out


class InvarianceExperiment(BaseExperiment):
    """Random polygons under random maps, odd trials orientation-reversing"""

    name = 'invariance'
    tolerance = 1e-9

    def trial(self, index, seed):
        rng = np.random.default_rng(seed)
        spec = BodySpec('random', {'n': 5 + index % 8, 'seed': seed})
        T = random_linear_map(rng, reverse=bool(index % 2))
        record = {'body': spec.to_dict(), 'map': T.tolist()}
        record.update(invariance_residuals(spec.materialize(), T))
        record['residual'] = max(record['out_residual'],
                                 record['in_residual'],
                                 record['hat_residual'],
                                 record['pointwise_residual'],
                                 record['dual_residual'])
        return record


def run_invariance(trials=100, seed=0, n_jobs=1, verbose=False):
    return InvarianceExperiment(trials, seed, n_jobs, verbose).run()
