"""Brute-force references agree with the exact kernels"""
import gc
import weakref

import numpy as np
import pytest

from gaugeplane.geometry.asymmetry import constant
from gaugeplane.geometry.gauge import (GaugeContext, dual_gauge_eval,
                                       gauge_eval)
from gaugeplane.geometry.generators import hexagon, rounded
from gaugeplane.geometry.oracle import (BoundarySample, OracleConfig,
                                        constant_sampled, contains,
                                        dual_gauge_sampled, gauge_bisect)


def test_contains(square_ctx, rounded_square_ctx):
    pts = np.array([(0, 0), (0.99, 0.99), (1.01, 0), (1.3, 1.3)])
    assert contains(square_ctx, pts).tolist() == [True, True, False, False]
    assert contains(rounded_square_ctx, pts).tolist() == [True, True, True,
                                                          True]
    assert not contains(rounded_square_ctx, [(1.4, 1.4)])[0]


def test_gauge_bisect(triangle_ctx):
    assert gauge_bisect(triangle_ctx, (-1, 0)) == pytest.approx(2, rel=1e-10)
    assert gauge_bisect(triangle_ctx, (0, 0)) == 0


def test_dual_gauge_sampled(random_polygons):
    cfg = OracleConfig(boundary_samples=4000)
    X = np.random.default_rng(2).normal(size=(50, 2))
    for p in random_polygons[:4]:
        ctx = GaugeContext(p)
        # polygon vertices are always among the samples
        assert np.allclose(dual_gauge_sampled(ctx, X, cfg),
                           dual_gauge_eval(ctx, X), rtol=1e-12)


@pytest.mark.parametrize('which', ['out', 'in', 'hat'])
def test_constants_agree(which, random_polygons, triangle_ctx):
    for ctx in [triangle_ctx] + [GaugeContext(p)
                                 for p in random_polygons[:5]]:
        exact = constant(ctx, which).value
        sampled = constant_sampled(ctx, which)
        assert sampled <= exact * (1 + 1e-3) + 1e-12
        assert sampled == pytest.approx(exact, rel=1e-3, abs=1e-9)


@pytest.mark.parametrize('which', ['out', 'in'])
def test_constants_agree_rounded(which):
    ctx = GaugeContext(rounded(hexagon(3.0), 0.05))
    exact = constant(ctx, which).value
    assert constant_sampled(ctx, which) == pytest.approx(exact, rel=1e-3)


def test_sampled_rejects_kind(square_ctx):
    with pytest.raises(ValueError):
        constant_sampled(square_ctx, 'sideways')


@pytest.mark.parametrize('field', ['boundary_samples', 't_grid',
                                   'refine_iters', 'tol'])
def test_config_validation(field):
    with pytest.raises(ValueError):
        OracleConfig(**{field: 0})


def test_gauge_bisect_matches_exact(rounded_square_ctx):
    for v in [(1, 0), (1, 1), (-0.3, 2)]:
        assert gauge_bisect(rounded_square_ctx, v) == pytest.approx(
            gauge_eval(rounded_square_ctx, v), rel=1e-10)


def test_boundary_sample(square_ctx):
    sample = BoundarySample.of(square_ctx, OracleConfig(boundary_samples=301))
    assert len(sample) == 302
    assert np.allclose(gauge_eval(square_ctx, sample.points), 1)
    X = np.random.default_rng(1).normal(size=(20, 2))
    assert np.array_equal(dual_gauge_sampled(square_ctx, X, sample=sample),
                          dual_gauge_sampled(square_ctx, X,
                                             OracleConfig(301)))


@pytest.mark.parametrize('which', ['out', 'in', 'hat'])
def test_sampling_holds_no_context(which, triangle):
    ctx = GaugeContext(triangle)
    ref = weakref.ref(ctx)
    constant_sampled(ctx, which, OracleConfig(boundary_samples=400))
    del ctx
    gc.collect()
    assert ref() is None
