"""Trial plumbing shared by the experiment suites"""
import multiprocessing

import numpy as np

from ..geometry.core import SingularMap


def run_trials(func, args, n_jobs=1):
    """Run `func` over a list of argument tuples

    Serial when `n_jobs` is 1, otherwise spread over a process pool with
    `starmap`. Results come back in the order of `args` either way.

    Parameters
    ----------
    func : callable
        Picklable trial function
    args : list of tuple
        Positional arguments of each call
    n_jobs : int, optional
        Number of processes, by default 1

    Returns
    -------
    list
        One result per entry of `args`
    """
    if n_jobs < 1:
        raise ValueError('n_jobs must be >= 1')
    if n_jobs == 1:
        return [func(*a) for a in args]
    with multiprocessing.Pool(processes=n_jobs) as pool:
        return pool.starmap(func, args)


def trial_seeds(seed, trials):
    """Independent integer seeds for each trial, stable under reordering
    and parallel execution"""
    return [int(np.random.SeedSequence([seed, i]).generate_state(1)[0])
            for i in range(trials)]


def random_linear_map(rng, reverse=False, min_det=0.1, max_tries=1000):
    """Random 2x2 map with entries in [-2, 2] and |det| >= `min_det`

    `reverse` selects an orientation-reversing map, otherwise the map
    preserves orientation.
    """
    for _ in range(max_tries):
        T = rng.uniform(-2, 2, size=(2, 2))
        det = np.linalg.det(T)
        if abs(det) < min_det:
            continue
        if (det < 0) != reverse:
            T[0] *= -1
        return T
    raise SingularMap(f'no map with |det| >= {min_det} in {max_tries} tries')


def nonmonotone_steps(values, tol=1e-9):
    """Number of steps where a decaying sequence increases by more than
    `tol`"""
    v = np.asarray(values, dtype=float)
    return int(np.count_nonzero(np.diff(v) > tol))
