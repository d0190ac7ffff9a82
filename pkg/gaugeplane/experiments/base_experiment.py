import logging
import time
from dataclasses import dataclass, field

import pandas as pd

from .utils import run_trials, trial_seeds

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    """Outcome of a verification suite

    `passed` is True exactly when `max_residual <= tolerance`. `records` hold
    one dict per trial with its seed and body recipe, enough to replay that
    trial alone. `series` maps a name to (parameter, value) pairs for
    plotting.
    """
    name: str
    trials: int
    tolerance: float
    max_residual: float
    passed: bool
    records: list
    runtime: float
    series: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'name': self.name,
            'trials': self.trials,
            'tolerance': self.tolerance,
            'max_residual': self.max_residual,
            'pass': self.passed,
            'runtime': self.runtime,
            'records': self.records,
            'series': {k: [list(p) for p in v]
                       for k, v in self.series.items()},
        }


class BaseExperiment(object):

    name = None
    tolerance = 1e-9

    def __init__(self, trials=1, seed=0, n_jobs=1, verbose=False):
        """Seeded verification suite made of independent trials

        Parameters
        ----------
        trials : int, optional
            Number of trials, by default 1
        seed : int, optional
            Master seed; every trial derives its own seed from it and its
            index, by default 0
        n_jobs : int, optional
            Number of worker processes, by default 1
        verbose : bool, optional
            Log a message per trial, by default False
        """
        if trials < 1:
            raise ValueError('trials must be >= 1')
        self.trials = trials
        self.seed = seed
        self.n_jobs = n_jobs
        self.verbose = verbose

    def trial(self, index, seed):
        """Run one trial and return its record, which includes 'residual'"""
        raise NotImplementedError

    def residual(self, records):
        return max(r['residual'] for r in records)

    def make_series(self, records):
        return {'residual': [(r['trial'], r['residual']) for r in records]}

    def _run_trial(self, index, seed):
        self.show_run_msg(index)
        record = {'trial': index, 'seed': seed}
        record.update(self.trial(index, seed))
        return record

    def run(self):
        """Run every trial and summarize them

        Returns
        -------
        ExperimentResult
            Aggregated result, also stored as `self.result`
        """
        start = time.perf_counter()
        args = list(enumerate(trial_seeds(self.seed, self.trials)))
        records = run_trials(self._run_trial, args, self.n_jobs)
        max_residual = float(self.residual(records))
        self.result = ExperimentResult(
            self.name, self.trials, self.tolerance, max_residual,
            max_residual <= self.tolerance, records,
            time.perf_counter() - start, self.make_series(records))
        logger.info('%s: max residual %.3g (tolerance %.3g) -> %s',
                    self.name, max_residual, self.tolerance,
                    'pass' if self.result.passed else 'FAIL')
        return self.result

    def check_run(self):
        """Check if the experiment has been run

        Raises
        ------
        ValueError
            Object has no result attribute yet
        """
        if not hasattr(self, 'result'):
            raise ValueError('result does not yet exist. Must call run().')

    def save(self, out):
        """Save per-trial records to a .csv file

        Nested fields (body recipes) are flattened into dotted columns.

        Parameters
        ----------
        out : str
            Output file name
        """
        self.check_run()
        pd.json_normalize(self.result.records).to_csv(out, index=False)

    def show_run_msg(self, index):
        """Log a trial message if verbosity is set

        Parameters
        ----------
        index : int
            Trial index
        """
        if self.verbose:
            logger.info('Running %s trial %d/%d', self.name, index + 1,
                        self.trials)
