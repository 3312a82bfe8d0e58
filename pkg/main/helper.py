from __future__ import division
import sys
from . import iris
from . import signature


def window_for_config(modality, database, config):

    if modality != 'iris':
        return None
    return iris.window_for(database, config['OFFSET_1'], config['OFFSET_2'])


def mass_for(modality, config):

    # Signature rasters are binary: one unit of mass per ink pixel
    return 'binary' if modality == 'signature' else config['MASS']


def preprocess_sample(img, modality, window=None, swap_axes=True):
    """Raw decoded sample to its 512x512 image: PIF for iris, normalized raster for signatures."""

    if modality == 'iris':
        return iris.extract_pif(img, window, swap_axes)
    if modality == 'signature':
        return signature.preprocess_signature(img)
    raise ValueError('unknown modality: {}'.format(modality))


def preprocessing_params(modality, database, config):

    w = window_for_config(modality, database, config)
    return {
        'modality': modality,
        'database': database,
        'offset_1': None if w is None else w.offset_1,
        'offset_2': None if w is None else w.offset_2,
        'swap_axes': config['SWAP_AXES'],
        'mass': mass_for(modality, config)
    }


def welcome(version, subcommand):

    print('\n{} MVQCVerify {} ({}) {}'.format('=' * 3, version, subcommand, '=' * 80))


def step(txt):

    sys.stdout.write('{} ... '.format(txt))
    sys.stdout.flush()


def done():

    print(' - Done.')


def warning(txt):

    sys.stderr.write('Warning: {}\n'.format(txt))
    sys.stderr.flush()


def error(txt):

    sys.stderr.write('Error: {}\n'.format(txt))
    sys.stderr.flush()


def goodbye(outputs, runtime):

    print('')
    for label, fn in outputs:
        print('{}: {}'.format(label, fn))

    runtime = runtime[:runtime.find('.')] if '.' in runtime else runtime
    print('\n Finished in: {}'.format(runtime))

    print('{}\n'.format('=' * 103))


def init_progress(txt):

    sys.stdout.write('\r{} ... 0.0%'.format(txt))
    sys.stdout.flush()


def print_progress(txt, counter, total):

    x = round(100 * counter / total, 1) if total > 0 else 100.0
    x = min(x, 100.0)
    sys.stdout.write('\r{} ... {}%'.format(txt, x))
    sys.stdout.flush()


def finalize_progress(txt):

    sys.stdout.write('\r{} ... 100.0%'.format(txt))
    sys.stdout.flush()
    print(' - Done.')
