"""Duality between the normalized outer and the inner asymmetry

For a polygon P with dual P^w, c_hat_out(P) = c_in(P^w), and in the other
direction c_in(P) = c_hat_out(P^w). Pointwise, f_hat_out on P equals f_in on
P^w at every direction. The dual of the dual is -P.
"""
import numpy as np

from ..geometry.asymmetry import c_hat_out, c_in, decompose, evaluate_many
from ..geometry.core import ConvexPolygon, vertex_deviation
from ..geometry.gauge import GaugeContext, dual_context
from ..geometry.generators import BodySpec
from .base_experiment import BaseExperiment


def duality_residuals(ctx):
    """All duality residuals of a polygon context

    Returns
    -------
    dict
        Constants on both sides and the residuals 'forward' (c_hat_out vs
        dual c_in), 'backward' (c_in vs dual c_hat_out), 'pointwise' and
        'bidual'
    """
    dual = dual_context(ctx)
    hat, dual_in = c_hat_out(ctx).value, c_in(dual).value
    inner, dual_hat = c_in(ctx).value, c_hat_out(dual).value

    mids = decompose(ctx, 'hat').midpoints
    pointwise = np.abs(evaluate_many(ctx, 'hat', mids)
                       - evaluate_many(dual, 'in', mids))
    bidual = vertex_deviation(dual.dual.polygon,
                              ConvexPolygon(-ctx.core.vertices))
    return {
        'c_hat_out': hat,
        'dual_c_in': dual_in,
        'c_in': inner,
        'dual_c_hat_out': dual_hat,
        'forward': abs(hat - dual_in),
        'backward': abs(inner - dual_hat),
        'pointwise': float(pointwise.max()),
        'bidual': float(bidual),
    }


class DualityExperiment(BaseExperiment):
    """Duality residuals on seeded random polygons with 5 to 12 vertices"""

    name = 'duality'
    tolerance = 1e-9

    def trial(self, index, seed):
        spec = BodySpec('random', {'n': 5 + index % 8, 'seed': seed})
        ctx = GaugeContext(spec.materialize())
        record = {'body': spec.to_dict()}
        record.update(duality_residuals(ctx))
        record['residual'] = max(record['forward'], record['backward'],
                                 record['pointwise'], record['bidual'])
        return record


def run_duality(trials=100, seed=0, n_jobs=1, verbose=False):
    return DualityExperiment(trials, seed, n_jobs, verbose).run()
