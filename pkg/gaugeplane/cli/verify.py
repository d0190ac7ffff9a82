"""Run a verification suite"""
import argparse
import os
import sys

from gaugeplane.cli.base import (EXIT_FAILED, EXIT_OK, base_cli,
                                 configure_logging, dumps_json,
                                 handle_base_args, make_param_file,
                                 output_dir, run_command, write_atomic)
from gaugeplane.experiments import (SUITES, BoundExperiment,
                                    ContinuityExperiment)
from gaugeplane.experiments.bound import DEFAULT_ALPHAS
from gaugeplane.experiments.continuity import DEFAULT_NS

DEFAULT_TRIALS = {'duality': 100, 'invariance': 100, 'sandwich': 50}


def _cli_parser():
    """Reads verify CLI arguments and returns input parameters combined
    with those from the general CLI
    """
    parser = argparse.ArgumentParser(prog='gaugeplane-verify')
    parser.add_argument('suite', type=str, choices=sorted(SUITES),
                        help='Verification suite to run')
    parser.add_argument('--trials', type=int,
                        help='Number of trials for the duality (default 100), '
                             'invariance (default 100) and sandwich (default '
                             '50) suites. The bound and continuity suites '
                             'run one trial per alpha or per sequence')
    parser.add_argument('--seed', type=int,
                        help='Master seed. Default: the ASYM_SEED environment '
                             'variable when set, else 0')
    parser.add_argument('--alphas', nargs='+', type=float,
                        help='Hexagon parameters of the bound suite. '
                             'Default: 1 3 10 50')
    parser.add_argument('--eps', type=float,
                        help='Rounding radius of the bound suite (default '
                             '1e-3) or perturbation size of the sandwich '
                             'suite (default 1e-3)')
    parser.add_argument('--ns', nargs='+', type=int,
                        help='Sequence indices n of the continuity suite. '
                             'Default: 4 8 ... 512')
    parser.add_argument('--out', type=str,
                        help='Write the result JSON to this file. A '
                             'gaugeplane_data directory with parameters.json '
                             'and the per-trial records is written next to it')
    parser.add_argument('--n_jobs', type=int, default=1,
                        help='The number of CPUs to use if parallelization is '
                             'desired. Default: 1 (serial processing)')
    parser = base_cli(parser)
    return parser.parse_args()


def _check_verify_params(params):
    """Ensure that required fields are included and correctly formatted"""
    params = handle_base_args(params)

    if params['suite'] not in SUITES:
        raise ValueError(f"unknown suite {params['suite']!r}, expected one of "
                         f"{sorted(SUITES)}")
    if params['trials'] is None:
        params['trials'] = DEFAULT_TRIALS.get(params['suite'], 1)
    if params['trials'] < 1:
        raise ValueError('trials must be >= 1')
    if params['n_jobs'] < 1:
        raise ValueError('n_jobs must be >= 1')
    if params['alphas'] is not None:
        if any(a <= 0 for a in params['alphas']):
            raise ValueError('alphas must be positive')
    if params['eps'] is not None and params['eps'] <= 0:
        raise ValueError('eps must be positive')
    if params['ns'] is not None and any(n < 1 for n in params['ns']):
        raise ValueError('ns must be positive integers')
    return params


def make_experiment(params):
    """Experiment object for the suite named in `params`"""
    suite = params['suite']
    common = {'seed': params['seed'], 'n_jobs': params['n_jobs'],
              'verbose': params['verbose']}
    if suite == 'bound':
        return BoundExperiment(params['alphas'] or DEFAULT_ALPHAS,
                               params['eps'] or 1e-3, **common)
    if suite == 'continuity':
        return ContinuityExperiment(ns=params['ns'] or DEFAULT_NS, **common)
    if suite == 'sandwich':
        return SUITES[suite](params['trials'], eps=params['eps'] or 1e-3,
                             **common)
    return SUITES[suite](params['trials'], **common)


def _summary(result):
    summary = result.to_dict()
    summary.pop('records')
    summary.pop('series')
    return summary


def _residual_report(result):
    lines = [f'{result.name}: FAIL, max residual {result.max_residual:.6g} '
             f'exceeds tolerance {result.tolerance:.3g}']
    worst = sorted(result.records, key=lambda r: -r['residual'])[:5]
    for r in worst:
        lines.append(f"  trial {r['trial']} (seed {r['seed']}): residual "
                     f"{r['residual']:.6g}")
    return '\n'.join(lines)


def _run(params):
    experiment = make_experiment(params)
    result = experiment.run()

    if params['out'] is not None:
        metadata_path = make_param_file(params, output_dir(params['out']))
        experiment.save(os.path.join(metadata_path,
                                     f"{params['suite']}_records.csv"))
        write_atomic(params['out'], dumps_json(result.to_dict(), indent=2))

    if not result.passed:
        print(_residual_report(result), file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(dumps_json(_summary(result), indent=2) + '\n')
    return EXIT_OK


def main():
    params = vars(_cli_parser())
    configure_logging(params['verbose'])

    def command(params):
        return _run(_check_verify_params(params))

    sys.exit(run_command(command, params))


if __name__ == '__main__':
    raise RuntimeError("`gaugeplane/cli/verify.py` should not be run "
                       "directly. Please `pip install` gaugeplane and use "
                       "the `gaugeplane-verify` command.")
