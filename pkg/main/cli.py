from optparse import OptionParser
import sys
from . import classifiers
from . import helper
from . import parsers
from . import report
from . import synth
from . import toplevel
from .version import __version__


USAGE = '''MVQCVerify.py <subcommand> <options>

Subcommands:
  enroll     enroll every subject of a manifest and write template files
  verify     verify one sample against a template (exit 0 accept, 1 reject)
  evaluate   run the FRR/FAR protocol over a configuration grid
  synth      generate a synthetic iris or signature corpus
  report     convert a JSON report to csv, json or text-table

Run MVQCVerify.py <subcommand> --help for the options of a subcommand.'''


CONFIG_HELP = {
    'D1': 'Quadtree component side(s): 64, 128 or 256 (comma-separated for a grid)',
    'B': 'Number of MVQCs per template (comma-separated for a grid)',
    'MOMENT': 'Moment kind(s): A, B or C (comma-separated for a grid)',
    'CLASSIFIER': 'Classifier id(s): {}'.format(', '.join(classifiers.CLASSIFIER_IDS)),
    'OFFSET_1': 'Iris window offset_1 (default: per-database value)',
    'OFFSET_2': 'Iris window offset_2 (default: per-database value)',
    'SWAP_AXES': 'Pair x with y_c when placing the iris window (true/false)',
    'TILE_ORDER': 'Component numbering: morton or raster',
    'MASS': 'Iris moment mass: gray or binary',
    'SEED': 'Random seed echoed into the report',
    'THREADS': 'Number of worker threads',
    'IMPOSTER_CAP': 'Maximum cross-subject imposter trials per subject (0 = no cap)',
    'TRAINING_IMPOSTERS': 'Imposter samples added to the clustering fit',
    'FUZZIFIER': 'Fuzzifier of the fuzzy classifiers',
    'EPSILON': 'Fuzzy k-means termination tolerance',
    'MAX_ITERATIONS': 'Iteration limit of the clustering classifiers',
    'EAGER': 'Decode every image at load time (true/false)',
    'RECORD_TIMING': 'Write the wall-clock time into the report (true/false)'
}


def add_config_options(parser):

    parser.add_option(
        '--config',
        default=None,
        dest='config',
        action='store',
        help='Configuration file (JSON or KEY = VALUE)'
    )

    for key in parsers.CONFIG_DEFAULTS:
        parser.add_option(
            '--{}'.format(key.lower()),
            default=None,
            dest=key.lower(),
            action='store',
            help='{} [{}]'.format(CONFIG_HELP[key], parsers.CONFIG_DEFAULTS[key])
        )


def add_format_option(parser):

    parser.add_option(
        '--format',
        default='json',
        dest='format',
        action='store',
        type='choice',
        choices=list(report.FORMATS),
        help='Report format: csv, json or text-table [json]'
    )


def enroll_parser():

    parser = OptionParser(description='MVQCVerify v{} enroll'.format(__version__), usage='MVQCVerify.py enroll <options>', version=__version__)

    parser.add_option(
        '--manifest',
        default=None,
        dest='manifest',
        action='store',
        help='Dataset manifest (JSON)'
    )

    parser.add_option(
        '--output',
        default=None,
        dest='output',
        action='store',
        help='Output directory of the template files'
    )

    add_config_options(parser)
    return parser


def verify_parser():

    parser = OptionParser(description='MVQCVerify v{} verify'.format(__version__), usage='MVQCVerify.py verify <options>', version=__version__)

    parser.add_option(
        '--template',
        default=None,
        dest='template',
        action='store',
        help='Template file written by enroll'
    )

    parser.add_option(
        '--sample',
        default=None,
        dest='sample',
        action='store',
        help='Sample image (PGM or PNG)'
    )

    return parser


def evaluate_parser():

    parser = OptionParser(description='MVQCVerify v{} evaluate'.format(__version__), usage='MVQCVerify.py evaluate <options>', version=__version__)

    parser.add_option(
        '--manifest',
        default=None,
        dest='manifest',
        action='store',
        help='Dataset manifest (JSON)'
    )

    parser.add_option(
        '--output',
        default=None,
        dest='output',
        action='store',
        help='Output report file'
    )

    add_format_option(parser)
    add_config_options(parser)
    return parser


def synth_parser():

    parser = OptionParser(description='MVQCVerify v{} synth'.format(__version__), usage='MVQCVerify.py synth <options>', version=__version__)

    parser.add_option(
        '--seed',
        default=0,
        dest='seed',
        action='store',
        type='int',
        help='Random seed [0]'
    )

    parser.add_option(
        '--subjects',
        default=20,
        dest='subjects',
        action='store',
        type='int',
        help='Number of subjects [20]'
    )

    parser.add_option(
        '--modality',
        default='signature',
        dest='modality',
        action='store',
        type='choice',
        choices=list(synth.MODALITIES),
        help='iris or signature [signature]'
    )

    parser.add_option(
        '--separation',
        default='high',
        dest='separation',
        action='store',
        help='low, medium, high or a positive number [high]'
    )

    parser.add_option(
        '--samples',
        default=synth.SAMPLES_PER_SUBJECT,
        dest='samples',
        action='store',
        type='int',
        help='Genuine samples per subject [{}]'.format(synth.SAMPLES_PER_SUBJECT)
    )

    parser.add_option(
        '--training_count',
        default=synth.TRAINING_COUNT,
        dest='training_count',
        action='store',
        type='int',
        help='Training samples per subject written to the manifest [{}]'.format(synth.TRAINING_COUNT)
    )

    parser.add_option(
        '--output',
        default=None,
        dest='output',
        action='store',
        help='Output directory'
    )

    return parser


def report_parser():

    parser = OptionParser(description='MVQCVerify v{} report'.format(__version__), usage='MVQCVerify.py report <options>', version=__version__)

    parser.add_option(
        '--input',
        default=None,
        dest='input',
        action='store',
        help='JSON report written by evaluate'
    )

    parser.add_option(
        '--output',
        default=None,
        dest='output',
        action='store',
        help='Output file'
    )

    add_format_option(parser)
    return parser


PARSERS = {
    'enroll': enroll_parser,
    'verify': verify_parser,
    'evaluate': evaluate_parser,
    'synth': synth_parser,
    'report': report_parser
}


def main(argv):

    if len(argv) == 0 or argv[0] in ('-h', '--help'):
        print(USAGE)
        return 0 if len(argv) > 0 else 2

    if argv[0] == '--version':
        print(__version__)
        return 0

    if argv[0] not in PARSERS:
        helper.error('unknown subcommand: {}'.format(argv[0]))
        print(USAGE)
        return 2

    (options, args) = PARSERS[argv[0]]().parse_args(argv[1:])

    try:
        return toplevel.RUNNERS[argv[0]](options)
    except (ValueError, IOError, RuntimeError) as err:
        helper.error(str(err))
        return 2


def start_cli():

    sys.exit(main(sys.argv[1:]))
