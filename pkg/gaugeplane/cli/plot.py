"""Plot data from verification results or body documents

Result files give their series: continuity residuals against n on log10
scales, bound values c_out against alpha, and per-trial residuals for the
other suites. Body documents give the asymmetry profile f over the boundary
angle.
"""
import argparse
import io
import json
import sys
from html import escape

import numpy as np
import pandas as pd

from gaugeplane.cli.base import (EXIT_OK, DocumentError, base_cli,
                                 configure_logging, handle_base_args,
                                 parse_body_document, run_command,
                                 sampling_config, write_atomic)
from gaugeplane.geometry.asymmetry import asymmetry_profile

WIDTH, HEIGHT = 800, 600
MARGIN = 70
LOG_FLOOR = 1e-300
COLORS = ('#1f77b4', '#d62728', '#2ca02c', '#ff7f0e', '#9467bd', '#8c564b',
          '#e377c2', '#7f7f7f', '#bcbd22', '#17becf')


def _cli_parser():
    """Reads plot CLI arguments and returns input parameters combined
    with those from the general CLI
    """
    parser = argparse.ArgumentParser(prog='gaugeplane-plot')
    parser.add_argument('input', type=str,
                        help='A result file written by gaugeplane-verify, '
                             'or a JSON body document')
    parser.add_argument('--format', type=str, default='csv',
                        choices=['csv', 'svg'],
                        help='Output format. Default: csv')
    parser.add_argument('--out', type=str,
                        help='Output file. Default: stdout')
    parser.add_argument('--which', type=str, default='out',
                        choices=['out', 'in', 'hat'],
                        help='Asymmetry function profiled for body '
                             'documents. Default: out')
    parser.add_argument('--samples', type=int, default=720,
                        help='Number of boundary angles of a profile. '
                             'Default: 720')
    parser = base_cli(parser)
    return parser.parse_args()


def _check_plot_params(params):
    params = handle_base_args(params)
    if params['format'] not in ('csv', 'svg'):
        raise ValueError(f"format must be csv or svg, got "
                         f"{params['format']!r}")
    if params['which'] not in ('out', 'in', 'hat'):
        raise ValueError(f"which must be out, in or hat, got "
                         f"{params['which']!r}")
    if not isinstance(params['samples'], int) or params['samples'] < 1:
        raise ValueError('samples must be a positive integer')
    return params


def _log10(values):
    return np.log10(np.maximum(np.asarray(values, dtype=float), LOG_FLOOR))


def result_frame(result):
    """Long-format plot data of a verification result

    Returns
    -------
    pd.DataFrame
        Columns 'series', 'parameter' and 'value'
    """
    try:
        name = result['name']
        series = result['series']
        frames = []
        for key, pairs in series.items():
            pts = np.asarray(pairs, dtype=float).reshape(-1, 2)
            x, y = pts[:, 0], pts[:, 1]
            if name == 'continuity':
                x, y = _log10(x), _log10(y)
            frames.append(pd.DataFrame({'series': key, 'parameter': x,
                                        'value': y}))
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise DocumentError(f'malformed result file: {e}') from e
    if not frames:
        raise DocumentError('result file has no series')
    return pd.concat(frames, ignore_index=True)


def profile_frame(doc, which, samples):
    """Long-format profile of f_`which` over the boundary angle"""
    df = asymmetry_profile(doc.context(sampling_config(None)), which, samples)
    df.insert(0, 'series', f'f_{which}')
    return df


def load_plot_data(fname, which='out', samples=720):
    """Read a result file or body document and return its plot data and
    axis labels"""
    try:
        with open(fname, 'r') as f:
            text = f.read()
    except OSError as e:
        raise DocumentError(f'{fname}: cannot read file ({e.strerror})') from e
    try:
        obj = json.loads(text)
    except json.decoder.JSONDecodeError as e:
        raise DocumentError(f'{fname}:{e.lineno}:{e.colno}: {e.msg}') from e

    if isinstance(obj, dict) and 'type' in obj:
        doc = parse_body_document(text, fname)
        return (profile_frame(doc, which, samples),
                ('boundary angle', f'f_{which}'))
    if not isinstance(obj, dict) or 'series' not in obj:
        raise DocumentError(f'{fname}: expected a result file or a body '
                            'document')
    labels = {'continuity': ('log10 n', 'log10 residual'),
              'bound': ('alpha', 'c_out')}
    return result_frame(obj), labels.get(obj.get('name'),
                                         ('trial', 'residual'))


def to_csv(df):
    """CSV text; the series column is kept only when there are several"""
    if df['series'].nunique() == 1:
        df = df.drop(columns='series')
    buf = io.StringIO()
    df.to_csv(buf, index=False, float_format='%.17g')
    return buf.getvalue()


def _ticks(lo, hi, n=5):
    return np.linspace(lo, hi, n)


def _padded_range(v):
    lo, hi = float(np.min(v)), float(np.max(v))
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def to_svg(df, labels, title=''):
    """SVG line plot with one polyline per series"""
    x_lo, x_hi = _padded_range(df['parameter'])
    y_lo, y_hi = _padded_range(df['value'])
    w, h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def sx(x):
        return MARGIN + (x - x_lo) / (x_hi - x_lo) * w

    def sy(y):
        return HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * h

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
           f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" '
           'font-family="sans-serif" font-size="12">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{h}" '
           'fill="none" stroke="black"/>']
    for t in _ticks(x_lo, x_hi):
        out.append(f'<text x="{sx(t):.2f}" y="{HEIGHT - MARGIN + 18}" '
                   f'text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y_lo, y_hi):
        out.append(f'<text x="{MARGIN - 6}" y="{sy(t) + 4:.2f}" '
                   f'text-anchor="end">{t:.3g}</text>')
    out.append(f'<text x="{WIDTH / 2:.0f}" y="{HEIGHT - 20}" '
               f'text-anchor="middle">{escape(labels[0])}</text>')
    out.append(f'<text x="20" y="{HEIGHT / 2:.0f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {HEIGHT / 2:.0f})">'
               f'{escape(labels[1])}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2:.0f}" y="{MARGIN - 20}" '
                   f'text-anchor="middle" font-size="16">{escape(title)}'
                   '</text>')

    for i, (key, g) in enumerate(df.groupby('series', sort=False)):
        color = COLORS[i % len(COLORS)]
        pts = ' '.join(f'{sx(x):.2f},{sy(y):.2f}'
                       for x, y in zip(g['parameter'], g['value']))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   'stroke-width="1.5"/>')
        out.append(f'<text x="{WIDTH - MARGIN - 6}" '
                   f'y="{MARGIN + 16 * (i + 1)}" text-anchor="end" '
                   f'fill="{color}">{escape(str(key))}</text>')
    out.append('</svg>')
    return '\n'.join(out) + '\n'


def _run(params):
    df, labels = load_plot_data(params['input'], params['which'],
                                params['samples'])
    if params['format'] == 'svg':
        text = to_svg(df, labels)
    else:
        text = to_csv(df)
    if params['out'] is not None:
        write_atomic(params['out'], text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    params = vars(_cli_parser())
    configure_logging(params['verbose'])

    def command(params):
        return _run(_check_plot_params(params))

    sys.exit(run_command(command, params))


if __name__ == '__main__':
    raise RuntimeError("`gaugeplane/cli/plot.py` should not be run directly. "
                       "Please `pip install` gaugeplane and use the "
                       "`gaugeplane-plot` command.")
