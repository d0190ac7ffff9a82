"""Common arguments and plumbing for all CLIs"""

import os
import sys
import glob
import json
import logging
import numbers
import tempfile
from dataclasses import dataclass, field

# import for version reporting
from platform import python_version
import numpy
import scipy
import pandas
import natsort

import gaugeplane
from gaugeplane.geometry.core import GeometryError, SymplecticForm
from gaugeplane.geometry.gauge import GaugeContext, SamplingConfig
from gaugeplane.geometry.generators import BodySpec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_GEOMETRY = 3


class DocumentError(ValueError):
    """A body document is malformed or describes an invalid body"""


def base_cli(parser):
    """Generate CLI with arguments shared among all interfaces"""
    parser.add_argument('-c', '--config', type=str,
                        help='A configuration .json file to pass parameters. '
                             'This will overwrite command-line arguments if '
                             'the same parameter is specified in both. See '
                             'resources/config-templates for the keys of '
                             'each command')
    parser.add_argument('-v', '--verbose', action='store_true', default=False,
                        help='Print out progress')
    return parser


def configure_logging(verbose=False):
    """Send package log records to stderr, at INFO when verbose"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('[%(asctime)s] %(message)s',
                                           datefmt='%H:%M:%S'))
    root = logging.getLogger('gaugeplane')
    root.handlers = [handler]
    root.setLevel(logging.INFO if verbose else logging.WARNING)
    root.propagate = False


def empty_to_none(x):
    """Replace an empty list from params with None"""
    if isinstance(x, list):
        if not x:
            x = None
    return x


def merge_params(params, config):
    """Merge CLI params with configuration file params. Configuration params
    will overwrite the CLI params.
    """
    return {**params, **config}


def check_glob(x):
    """Get files based on glob patterns

    Parameters
    ----------
    x : str, list
        A glob pattern string or a list of file names and patterns. Each
        pattern is expanded and naturally sorted; names without a match are
        kept so that a missing file is reported when read.

    Returns
    -------
    list
        List of file names

    Raises
    ------
    ValueError
       x is neither a string nor list of strings
    """
    if isinstance(x, str):
        x = [x]
    if not isinstance(x, list) or not all(isinstance(i, str) for i in x):
        raise ValueError('Input body files must be a string or list of '
                         'strings')
    files = []
    for pattern in x:
        matches = natsort.natsorted(glob.glob(pattern))
        files.extend(matches if matches else [pattern])
    return files


def default_seed():
    """Seed from the ASYM_SEED environment variable, 0 when unset

    Raises
    ------
    ValueError
        ASYM_SEED is not an integer
    """
    value = os.environ.get('ASYM_SEED')
    if value is None or value.strip() == '':
        return 0
    try:
        return int(value)
    except ValueError as e:
        raise ValueError(f'ASYM_SEED must be an integer, got {value!r}') from e


def read_config(fname):
    with open(fname, 'rb') as f:
        try:
            conf_params = json.load(f)
        except json.decoder.JSONDecodeError as e:
            raise ValueError('Invalid .json configuration file') from e
    if not isinstance(conf_params, dict):
        raise ValueError('Invalid .json configuration file')
    return conf_params


def handle_base_args(params):
    """Read the config file and resolve shared parameters

    Parameters
    ----------
    params : dict
        Input parameters

    Returns
    -------
    dict
        Validated parameters
    """
    # read config file if available -- overwrites CLI
    if params.get('config') is not None:
        params = merge_params(params, read_config(params['config']))
    params.pop('config', None)

    if 'seed' in params and params['seed'] is None:
        params['seed'] = default_seed()
    if 'seed' in params and not isinstance(params['seed'], numbers.Integral):
        raise ValueError(f"seed must be an integer, got {params['seed']!r}")
    return params


def _get_package_versions():
    """Get dependency versions for metadata file created by CLI"""
    versions = {
        'python': python_version(),
        'gaugeplane': gaugeplane.__version__,
        'numpy': numpy.__version__,
        'scipy': scipy.__version__,
        'pandas': pandas.__version__,
        'natsort': natsort.__version__
    }
    return versions


def make_param_file(params, out_dir):
    """Generate a parameters.json file next to the outputs

    Parameters
    ----------
    params : dict
        Resolved parameters
    out_dir : str
        Output directory; the file goes to `out_dir`/gaugeplane_data

    Returns
    -------
    str
        Path to which metadata is stored, including parameters.json
    """
    versions = _get_package_versions()

    # export command-line call and parameters to a file
    param_info = {'command': " ".join(sys.argv), 'parameters': params,
                  'meta_data': versions}

    metadata_path = os.path.join(out_dir, 'gaugeplane_data')
    os.makedirs(metadata_path, exist_ok=True)
    param_file = os.path.join(metadata_path, 'parameters.json')
    write_atomic(param_file, dumps_json(param_info, indent=2))
    return metadata_path


def output_dir(out):
    return os.path.dirname(os.path.abspath(out))


# Serialization

def to_jsonable(obj):
    """Convert numpy values and nested containers to plain JSON types, with
    floats held to 17 significant digits"""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, numpy.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, numpy.bool_)):
        return bool(obj)
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, numbers.Real):
        return float(format(float(obj), '.17g'))
    return obj


def dumps_json(obj, indent=None):
    return json.dumps(to_jsonable(obj), indent=indent)


def write_atomic(path, text):
    """Write text to `path` through a temporary file in the same directory"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with tempfile.NamedTemporaryFile('w', dir=directory, suffix='.tmp',
                                     delete=False) as f:
        f.write(text)
        tmp = f.name
    try:
        os.replace(tmp, path)
    except OSError:
        os.unlink(tmp)
        raise


# Body documents

BODY_KEYS = {
    'polygon': {'vertices'},
    'rounded': {'vertices', 'body'},
    'hexagon': {'alpha', 'corner_shift'},
    'random': {'n', 'seed'},
    'regular': {'n', 'scale'},
    'symmetrized': {'body'},
    'reanchored': {'body', 'origin'},
}
REQUIRED_KEYS = {
    'polygon': {'vertices'},
    'rounded': {'radius'},
    'hexagon': {'alpha'},
    'random': {'n', 'seed'},
    'regular': {'n'},
    'symmetrized': {'body'},
    'reanchored': {'body', 'origin'},
}


@dataclass
class BodyDocument:
    """A parsed body document: the body recipe and the symplectic scale"""
    spec: BodySpec
    omega_scale: float = 1.0
    source: str = field(default='<document>')

    def materialize(self):
        """Build the body

        Raises
        ------
        DocumentError
            The recipe describes an invalid body
        """
        try:
            return self.spec.materialize()
        except GeometryError as e:
            raise DocumentError(f'{self.source}: invalid body: {e}') from e

    def context(self, sampling=None):
        return GaugeContext(self.materialize(),
                            SymplecticForm(self.omega_scale), sampling)


def _fail(path, msg):
    raise DocumentError(f'{path}: {msg}')


def _number(value, path, integer=False):
    ok = isinstance(value, numbers.Real) and not isinstance(value, bool)
    if integer:
        ok = ok and float(value).is_integer()
    if not ok or not numpy.isfinite(value):
        _fail(path, 'expected ' + ('an integer' if integer else 'a number')
              + f', got {value!r}')
    return int(value) if integer else float(value)


def _point(value, path):
    if not isinstance(value, list) or len(value) != 2:
        _fail(path, f'expected [x, y], got {value!r}')
    return [_number(c, f'{path}[{i}]') for i, c in enumerate(value)]


def _parse_body(doc, path):
    if not isinstance(doc, dict):
        _fail(path, 'expected an object')
    kind = doc.get('type')
    if kind not in BODY_KEYS:
        _fail(f'{path}.type', f'expected one of {sorted(BODY_KEYS)}, got '
                              f'{kind!r}')
    allowed = BODY_KEYS[kind] | {'type', 'radius'}
    if path == '$':
        allowed = allowed | {'omega_scale'}
    for key in doc:
        if key not in allowed:
            _fail(f'{path}.{key}', f'unknown key for a {kind} document')
    for key in REQUIRED_KEYS[kind]:
        if key not in doc:
            _fail(f'{path}.{key}', 'missing required key')

    params = {}
    if 'radius' in doc:
        params['radius'] = _number(doc['radius'], f'{path}.radius')
        if params['radius'] < 0:
            _fail(f'{path}.radius', 'must be >= 0')
    if 'vertices' in doc:
        vertices = doc['vertices']
        if not isinstance(vertices, list) or len(vertices) < 3:
            _fail(f'{path}.vertices', 'expected a list of at least 3 points')
        params['vertices'] = [_point(v, f'{path}.vertices[{i}]')
                              for i, v in enumerate(vertices)]
    if 'body' in doc:
        params['body'] = _parse_body(doc['body'], f'{path}.body')
    if kind == 'rounded':
        if ('vertices' in doc) == ('body' in doc):
            _fail(path, "a rounded document needs exactly one of 'vertices' "
                        "and 'body'")
        if 'vertices' in doc:
            params['body'] = BodySpec('polygon',
                                      {'vertices': params.pop('vertices')})
    if kind == 'hexagon':
        params['alpha'] = _number(doc['alpha'], f'{path}.alpha')
        if 'corner_shift' in doc:
            params['corner_shift'] = _number(doc['corner_shift'],
                                             f'{path}.corner_shift')
    if kind in ('random', 'regular'):
        params['n'] = _number(doc['n'], f'{path}.n', integer=True)
    if kind == 'random':
        params['seed'] = _number(doc['seed'], f'{path}.seed', integer=True)
    if kind == 'regular' and 'scale' in doc:
        params['scale'] = _number(doc['scale'], f'{path}.scale')
    if kind == 'reanchored':
        params['origin'] = _point(doc['origin'], f'{path}.origin')
    return BodySpec(kind, params)


def parse_body_document(text, source='<document>'):
    """Parse a JSON body document

    Parameters
    ----------
    text : str
        Document text
    source : str, optional
        Name used in diagnostics

    Returns
    -------
    BodyDocument
        The parsed recipe; call `materialize()` to build the body

    Raises
    ------
    DocumentError
        Invalid JSON (reported with line and column) or a schema violation
        (reported with the field path, `$` being the document root)
    """
    try:
        doc = json.loads(text)
    except json.decoder.JSONDecodeError as e:
        raise DocumentError(f'{source}:{e.lineno}:{e.colno}: {e.msg}') from e
    try:
        spec = _parse_body(doc, '$')
        omega_scale = 1.0
        if 'omega_scale' in doc:
            omega_scale = _number(doc['omega_scale'], '$.omega_scale')
            if omega_scale == 0:
                _fail('$.omega_scale', 'must be nonzero')
    except DocumentError as e:
        raise DocumentError(f'{source}: {e}') from None
    return BodyDocument(spec, omega_scale, source)


def read_body_document(fname):
    try:
        with open(fname, 'r') as f:
            text = f.read()
    except OSError as e:
        raise DocumentError(f'{fname}: cannot read file ({e.strerror})') from e
    return parse_body_document(text, fname)


def body_to_document(polygon, omega_scale=1.0):
    """Polygon document for a ConvexPolygon"""
    doc = {'type': 'polygon', 'vertices': polygon.vertices}
    if omega_scale != 1.0:
        doc['omega_scale'] = omega_scale
    return to_jsonable(doc)


def sampling_config(samples):
    if samples is None:
        return SamplingConfig()
    if not isinstance(samples, numbers.Integral) or samples < 2:
        raise ValueError(f'samples must be an integer >= 2, got {samples!r}')
    return SamplingConfig(samples=int(samples))


# Command runner

def report_error(e, json_errors=False):
    if json_errors:
        print(dumps_json({'error': {'type': type(e).__name__,
                                    'message': str(e)}}))
    else:
        prog = os.path.basename(sys.argv[0]) if sys.argv else 'gaugeplane'
        print(f'{prog}: error: {e}', file=sys.stderr)


def run_command(func, params, json_errors=False):
    """Run a command body and map its failures to exit codes

    GeometryError gives 3; every other ValueError (documents, flags,
    configuration) gives 2. Returns the exit code of `func` otherwise.
    """
    try:
        return func(params)
    except GeometryError as e:
        report_error(e, json_errors)
        return EXIT_GEOMETRY
    except (ValueError, OSError) as e:
        report_error(e, json_errors)
        return EXIT_USAGE
