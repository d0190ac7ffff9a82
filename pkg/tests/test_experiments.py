import json
import os
from dataclasses import replace

import numpy as np
import pandas as pd
import pytest

from gaugeplane.experiments import (SUITES, BoundExperiment,
                                    ContinuityExperiment, DualityExperiment,
                                    InvarianceExperiment, SandwichExperiment)
from gaugeplane.experiments import bound
from gaugeplane.experiments.bound import lower_envelope, sharpness_ratio
from gaugeplane.experiments.continuity import (SEQUENCES, base_polygon,
                                               track_sequence)
from gaugeplane.experiments.duality import duality_residuals
from gaugeplane.experiments.invariance import invariance_residuals
from gaugeplane.experiments.sandwich import (sandwich_delta,
                                             sandwich_violation)
from gaugeplane.experiments.utils import (nonmonotone_steps,
                                          random_linear_map, run_trials,
                                          trial_seeds)
from gaugeplane.geometry.asymmetry import c_out
from gaugeplane.geometry.core import GeometryError, inradius
from gaugeplane.geometry.gauge import GaugeContext
from gaugeplane.geometry.generators import rounded


def _square(x):
    return x * x


def test_suites():
    assert sorted(SUITES) == ['bound', 'continuity', 'duality', 'invariance',
                              'sandwich']


def test_run_trials_parallel_matches_serial():
    args = [(i,) for i in range(6)]
    assert run_trials(_square, args) == run_trials(_square, args, n_jobs=2)
    with pytest.raises(ValueError):
        run_trials(_square, args, n_jobs=0)


def test_trial_seeds_stable():
    a = trial_seeds(0, 5)
    assert a == trial_seeds(0, 5)
    assert trial_seeds(0, 8)[:5] == a
    assert len(set(a)) == 5
    assert trial_seeds(1, 5) != a


@pytest.mark.parametrize('reverse', [False, True])
def test_random_linear_map(reverse):
    rng = np.random.default_rng(0)
    for _ in range(20):
        det = np.linalg.det(random_linear_map(rng, reverse))
        assert abs(det) >= 0.1
        assert (det < 0) == reverse


def test_nonmonotone_steps():
    assert nonmonotone_steps([1, 0.5, 0.25]) == 0
    assert nonmonotone_steps([1, 0.5, 0.6, 0.1, 0.2]) == 2
    assert nonmonotone_steps([1, 1 + 1e-12]) == 0


def test_duality_residuals(triangle_ctx, random_polygons):
    for ctx in [triangle_ctx] + [GaugeContext(p) for p in random_polygons]:
        r = duality_residuals(ctx)
        for key in ('forward', 'backward', 'pointwise', 'bidual'):
            assert r[key] <= 1e-9


def test_invariance_residuals(random_polygons):
    T = np.array([[1.0, 0.5], [0.2, -1.5]])
    r = invariance_residuals(random_polygons[0], T)
    assert r['det'] < 0
    for key in ('out_residual', 'in_residual', 'hat_residual',
                'pointwise_residual', 'dual_residual'):
        assert r[key] <= 1e-9


def test_sandwich_violation(square):
    x = np.random.default_rng(0).normal(size=(500, 2))
    violation, eps, delta = sandwich_violation(square, rounded(square, 0.01),
                                               x)
    assert violation == 0
    assert eps == pytest.approx(0.01)
    assert delta == pytest.approx(0.01 / 0.99)
    with pytest.raises(GeometryError):
        sandwich_delta(2.0, 0.5)


@pytest.mark.parametrize('cls', [DualityExperiment, InvarianceExperiment,
                                 SandwichExperiment])
def test_suites_pass(cls):
    result = cls(trials=6, seed=3).run()
    assert result.passed
    assert result.max_residual <= result.tolerance
    assert len(result.records) == 6
    assert [r['trial'] for r in result.records] == list(range(6))
    assert list(result.series) == ['residual']


def test_parallel_run_matches_serial():
    serial = DualityExperiment(trials=4, seed=5).run()
    parallel = DualityExperiment(trials=4, seed=5, n_jobs=2).run()
    assert serial.records == parallel.records


def test_records_replay_a_trial():
    exp = InvarianceExperiment(trials=3, seed=9)
    result = exp.run()
    r = result.records[2]
    replay = exp.trial(2, r['seed'])
    assert replay['residual'] == r['residual']


def test_bound_suite():
    result = BoundExperiment().run()
    assert result.passed
    assert result.tolerance == 0
    values = [v for _, v in result.series['c_out']]
    assert values == sorted(values)
    assert all(v < 2 for v in values)
    assert values[-1] >= 1.95
    for r in result.records:
        assert r['c_out'] >= lower_envelope(r['alpha'])
        assert r['ratio'] == pytest.approx(sharpness_ratio(r['alpha']))
        assert r['c_out'] >= r['ratio'] - 1e-2
        assert r['residual'] == 0


def test_bound_catches_lost_sharpness(monkeypatch):
    def lowered(ctx):
        report = c_out(ctx)
        return replace(report, value=report.value - 0.05)

    monkeypatch.setattr(bound, 'c_out', lowered)
    result = BoundExperiment().run()
    assert not result.passed
    # the weaker envelope 2 - 5 / (alpha + 1.5) alone would still pass
    last = result.records[-1]
    assert last['c_out'] >= lower_envelope(last['alpha'])
    assert last['residual'] > 0


def test_bound_rejects_eps():
    with pytest.raises(ValueError):
        BoundExperiment(eps=0)


def test_sharpness_ratio():
    assert sharpness_ratio(1.0) == pytest.approx(1.2)
    assert sharpness_ratio(1e9) == pytest.approx(2)


def test_base_polygon():
    P = base_polygon(0)
    assert inradius(P) >= 0.75 - 1e-12
    assert np.array_equal(P.vertices, base_polygon(0).vertices)


def test_track_sequence_decays():
    P = base_polygon(1)
    bodies = [rounded(P, 1 / n) for n in (4, 16, 64)]
    series = track_sequence(bodies, P, ('dual_hausdorff',), np.array([1, 0]))
    d = series['dual_hausdorff']
    assert d[0] > d[1] > d[2]


def test_continuity_short_run():
    exp = ContinuityExperiment(seed=2, ns=(4, 16, 64))
    result = exp.run()
    assert [r['sequence'] for r in result.records] == list(SEQUENCES)
    assert 'rounding/c_out' in result.series
    assert 'polygon_jitter/a_pm' in result.series
    assert 'polygon_rounding/c_in' in result.series
    assert 'polygon_jitter/c_in' in result.series
    for key, pairs in result.series.items():
        assert [n for n, _ in pairs] == [4, 16, 64]
        assert pairs[-1][1] <= pairs[0][1] + 1e-12, key


def test_continuity_default_passes():
    result = ContinuityExperiment(seed=0).run()
    assert result.passed
    finals = {r['sequence']: r['final'] for r in result.records}
    for name in SEQUENCES:
        assert finals[name]['c_in'] < 1e-2
    assert max(finals['rounding']['c_out'],
               finals['jitter']['c_out']) < 1e-2


def test_check_run_and_save(tmpdir):
    exp = DualityExperiment(trials=2, seed=1)
    with pytest.raises(ValueError):
        exp.check_run()
    with pytest.raises(ValueError):
        exp.save(os.path.join(tmpdir, 'records.csv'))
    exp.run()
    out = os.path.join(tmpdir, 'records.csv')
    exp.save(out)
    df = pd.read_csv(out)
    assert len(df) == 2
    assert {'trial', 'seed', 'residual', 'body.type', 'body.n'} <= \
        set(df.columns)


def test_result_to_dict():
    result = DualityExperiment(trials=2, seed=1).run()
    d = result.to_dict()
    assert set(d) == {'name', 'trials', 'tolerance', 'max_residual', 'pass',
                      'runtime', 'records', 'series'}
    assert d['pass'] is True
    json.dumps(d)


def test_trials_validation():
    with pytest.raises(ValueError):
        DualityExperiment(trials=0)
