"""Asymmetry constants of body documents"""
import argparse
import io
import sys

import pandas as pd

from gaugeplane.cli.base import (EXIT_OK, base_cli, check_glob,
                                 configure_logging, dumps_json,
                                 empty_to_none, handle_base_args,
                                 make_param_file, output_dir,
                                 read_body_document, run_command,
                                 sampling_config, write_atomic)
from gaugeplane.geometry.asymmetry import KINDS, constant


def _cli_parser():
    """Reads constants CLI arguments and returns input parameters
    combined with those from the general CLI
    """
    parser = argparse.ArgumentParser(prog='gaugeplane-constants')
    parser.add_argument('body_files', nargs='*', type=str,
                        help='One or more JSON body documents. Can also be a '
                             'string with wildcards (*) to specify all files '
                             'matching the file pattern. If so, these files '
                             'are naturally sorted by file name')
    parser.add_argument('--which', type=str, default='all',
                        choices=['out', 'in', 'hat', 'all'],
                        help='Asymmetry constant to compute: outer (out), '
                             'inner (in), normalized outer (hat) or all '
                             'three. Default: all')
    parser.add_argument('--samples', type=int, default=64,
                        help='Samples per boundary piece for rounded bodies '
                             'before refinement. Polygons are computed '
                             'exactly and ignore this. Default: 64')
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument('--json', dest='format', action='store_const',
                     const='json', help='Print reports as JSON (default)')
    fmt.add_argument('--csv', dest='format', action='store_const',
                     const='csv', help='Print one CSV row per constant')
    parser.add_argument('--out', type=str,
                        help='Also write the output to this file. A '
                             'gaugeplane_data/parameters.json file is written '
                             'next to it')
    parser = base_cli(parser)
    return parser.parse_args()


def _check_constants_params(params):
    """Ensure that required fields are included and correctly formatted"""
    params = handle_base_args(params)

    params['body_files'] = empty_to_none(params['body_files'])
    if params['body_files'] is None:
        raise ValueError('Missing body_files. Provide one or more body '
                         'documents')
    params['body_files'] = check_glob(params['body_files'])

    if params['which'] not in KINDS + ('all',):
        raise ValueError(f"which must be one of out, in, hat or all, got "
                         f"{params['which']!r}")
    params['format'] = params['format'] or 'json'
    if params['format'] not in ('json', 'csv'):
        raise ValueError(f"format must be json or csv, got "
                         f"{params['format']!r}")
    sampling_config(params['samples'])
    return params


def compute_reports(fname, which, samples):
    """Asymmetry reports of one body document

    Parameters
    ----------
    fname : str
        Body document file
    which : str
        'out', 'in', 'hat' or 'all'
    samples : int
        Samples per piece for rounded bodies

    Returns
    -------
    dict
        The symplectic scale and one report dict per constant
    """
    doc = read_body_document(fname)
    ctx = doc.context(sampling_config(samples))
    kinds = KINDS if which == 'all' else (which,)
    reports = [constant(ctx, k).to_dict(include_pieces=False) for k in kinds]
    return {'omega_scale': doc.omega_scale, 'constants': reports}


def _to_csv(results):
    rows = []
    for fname, report in results:
        for r in report['constants']:
            rows.append({'file': fname, 'constant': r['constant'],
                         'value': r['value'], 'witness_x': r['witness'][0],
                         'witness_y': r['witness'][1],
                         'method': r['method'], 'tolerance': r['tolerance'],
                         'n_pieces': r['n_pieces']})
    buf = io.StringIO()
    pd.DataFrame(rows).to_csv(buf, index=False, float_format='%.17g')
    return buf.getvalue()


def _run(params):
    results = [(f, compute_reports(f, params['which'], params['samples']))
               for f in params['body_files']]
    if params['format'] == 'csv':
        text = _to_csv(results)
    elif len(results) == 1:
        text = dumps_json(results[0][1], indent=2) + '\n'
    else:
        text = dumps_json([{'file': f, 'report': r} for f, r in results],
                          indent=2) + '\n'

    if params['out'] is not None:
        make_param_file(params, output_dir(params['out']))
        write_atomic(params['out'], text)
    sys.stdout.write(text)
    return EXIT_OK


def main():
    params = vars(_cli_parser())
    configure_logging(params['verbose'])
    # the error envelope replaces stderr messages only when --json is given
    json_errors = params['format'] == 'json'

    def command(params):
        return _run(_check_constants_params(params))

    sys.exit(run_command(command, params, json_errors))


if __name__ == '__main__':
    raise RuntimeError("`gaugeplane/cli/constants.py` should not be run "
                       "directly. Please `pip install` gaugeplane and use "
                       "the `gaugeplane-constants` command.")
