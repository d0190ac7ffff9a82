"""Dual polygon of a body document"""
import argparse
import sys

from gaugeplane.cli.base import (EXIT_OK, DocumentError, base_cli,
                                 body_to_document, configure_logging,
                                 dumps_json, handle_base_args,
                                 read_body_document, run_command,
                                 write_atomic)


def _cli_parser():
    """Reads dual CLI arguments and returns input parameters combined
    with those from the general CLI
    """
    parser = argparse.ArgumentParser(prog='gaugeplane-dual')
    parser.add_argument('body_file', type=str,
                        help='JSON body document of a polygon. The dual is '
                             'taken with respect to its omega_scale')
    parser.add_argument('--out', type=str,
                        help='Write the dual polygon document to this file '
                             'instead of stdout')
    parser = base_cli(parser)
    return parser.parse_args()


def _check_dual_params(params):
    params = handle_base_args(params)
    if not params.get('body_file'):
        raise ValueError('Missing body_file')
    return params


def dual_document(fname):
    """Polygon document of the dual body, with the same omega_scale

    Raises
    ------
    DocumentError
        The document does not describe a polygon
    """
    doc = read_body_document(fname)
    ctx = doc.context()
    if not ctx.is_polygon:
        raise DocumentError(f'{fname}: the dual of a rounded body is not a '
                            'polygon; provide a polygon document')
    return body_to_document(ctx.dual.polygon, doc.omega_scale)


def _run(params):
    text = dumps_json(dual_document(params['body_file']), indent=2) + '\n'
    if params['out'] is not None:
        write_atomic(params['out'], text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    params = vars(_cli_parser())
    configure_logging(params['verbose'])

    def command(params):
        return _run(_check_dual_params(params))

    sys.exit(run_command(command, params))


if __name__ == '__main__':
    raise RuntimeError("`gaugeplane/cli/dual.py` should not be run directly. "
                       "Please `pip install` gaugeplane and use the "
                       "`gaugeplane-dual` command.")
