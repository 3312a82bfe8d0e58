from __future__ import division
from collections import OrderedDict, namedtuple
import itertools
import json
import os


GRID_KEYS = ('CLASSIFIER', 'D1', 'B', 'MOMENT')

# Keys that change how a run executes but not its results
EXECUTION_KEYS = ('THREADS', 'EAGER', 'RECORD_TIMING')

CONFIG_DEFAULTS = OrderedDict([
    ('D1', '128'),
    ('B', '6'),
    ('MOMENT', 'C'),
    ('CLASSIFIER', 'avgmax'),
    ('OFFSET_1', ''),
    ('OFFSET_2', ''),
    ('SWAP_AXES', 'true'),
    ('TILE_ORDER', 'morton'),
    ('MASS', 'gray'),
    ('SEED', '0'),
    ('THREADS', '1'),
    ('IMPOSTER_CAP', '0'),
    ('TRAINING_IMPOSTERS', '0'),
    ('FUZZIFIER', '2.0'),
    ('EPSILON', '1e-5'),
    ('MAX_ITERATIONS', '300'),
    ('EAGER', 'false'),
    ('RECORD_TIMING', 'false')
])

SubjectRecord = namedtuple('SubjectRecord', ['id', 'genuine', 'imposter'])

Manifest = namedtuple('Manifest', ['path', 'modality', 'database', 'training_count', 'subjects'])


def _to_list(value):

    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, str):
        return [x.strip() for x in value.split(',') if x.strip() != '']
    return [value]


def _to_bool(value):

    if isinstance(value, bool):
        return value
    return str(value).strip().upper() in ('TRUE', '1', 'YES')


def _to_optional_int(value):

    if value is None or str(value).strip() == '':
        return None
    return int(value)


def _read_key_value_file(fn):

    ret = {}
    with open(fn) as f:
        for line in f:
            line = line.strip()
            if line == '' or line[0] == '#':
                continue

            if '=' not in line:
                raise ValueError('malformed configuration line in {}: {}'.format(fn, line))
            [key, value] = line.split('=', 1)
            ret[key.strip().upper()] = value.strip()

    return ret


def _read_json_file(fn):

    with open(fn) as f:
        try:
            doc = json.load(f)
        except ValueError as err:
            raise ValueError('malformed JSON configuration {}: {}'.format(fn, err))

    if not isinstance(doc, dict):
        raise ValueError('configuration {} must be a JSON object'.format(fn))
    return dict((str(k).upper(), v) for k, v in doc.items())


def coerce_config(ret):

    for k in ['D1', 'B']:
        ret[k] = [int(x) for x in _to_list(ret[k])]

    ret['MOMENT'] = [str(x).upper() for x in _to_list(ret['MOMENT'])]
    ret['CLASSIFIER'] = [str(x).lower() for x in _to_list(ret['CLASSIFIER'])]

    for k in ['OFFSET_1', 'OFFSET_2']:
        ret[k] = _to_optional_int(ret[k])

    for k in ['SEED', 'THREADS', 'IMPOSTER_CAP', 'TRAINING_IMPOSTERS', 'MAX_ITERATIONS']:
        ret[k] = int(ret[k])

    for k in ['FUZZIFIER', 'EPSILON']:
        ret[k] = float(ret[k])

    for k in ['SWAP_AXES', 'EAGER', 'RECORD_TIMING']:
        ret[k] = _to_bool(ret[k])

    ret['TILE_ORDER'] = str(ret['TILE_ORDER']).lower()
    ret['MASS'] = str(ret['MASS']).lower()

    for k in GRID_KEYS:
        if len(ret[k]) == 0:
            raise ValueError('configuration key {} is empty'.format(k))

    return ret


def read_config_file(fn=None, overrides=None):
    """Configuration from a JSON or KEY = VALUE file, then command-line overrides."""

    ret = OrderedDict(CONFIG_DEFAULTS)

    if fn is not None:
        if not os.path.isfile(fn):
            raise IOError('missing file: {}'.format(fn))
        values = _read_json_file(fn) if fn.lower().endswith('.json') else _read_key_value_file(fn)
        for key, value in values.items():
            if key in ret:
                ret[key] = value

    for key, value in (overrides or {}).items():
        key = key.upper()
        if key in ret and value is not None:
            ret[key] = value

    try:
        return coerce_config(ret)
    except (TypeError, ValueError) as err:
        raise ValueError('invalid configuration value: {}'.format(err))


def expand_grid(config):

    for classifier, d1, b, moment in itertools.product(*[config[k] for k in GRID_KEYS]):
        point = OrderedDict(config)
        point['CLASSIFIER'] = classifier
        point['D1'] = d1
        point['B'] = b
        point['MOMENT'] = moment
        yield point


def config_to_dict(config):
    """Experiment settings echoed into reports; execution settings are left out."""

    return OrderedDict((k.lower(), v) for k, v in config.items() if k not in EXECUTION_KEYS)


def _check_paths(subject_id, key, paths):

    if not isinstance(paths, list) or not all(isinstance(p, str) for p in paths):
        raise ValueError('subject {}: "{}" must be a list of paths'.format(subject_id, key))


def read_manifest(fn):

    if not os.path.isfile(fn):
        raise IOError('missing file: {}'.format(fn))

    with open(fn) as f:
        try:
            doc = json.load(f)
        except ValueError as err:
            raise ValueError('malformed manifest {}: {}'.format(fn, err))

    if not isinstance(doc, dict):
        raise ValueError('manifest {} must be a JSON object'.format(fn))

    modality = doc.get('modality')
    if modality not in ('iris', 'signature'):
        raise ValueError('manifest {}: unknown modality {}'.format(fn, modality))

    P = doc.get('training_count')
    if not isinstance(P, int) or P < 2:
        raise ValueError('manifest {}: training_count must be an integer >= 2, got {}'.format(fn, P))

    subjects = doc.get('subjects')
    if not isinstance(subjects, list):
        raise ValueError('manifest {}: "subjects" must be a list'.format(fn))
    if len(subjects) == 0:
        raise ValueError('no subjects')

    # Sample paths are relative to the manifest
    root = os.path.dirname(os.path.abspath(fn))

    ret = []
    seen = set()
    for s in subjects:

        if not isinstance(s, dict) or 'id' not in s:
            raise ValueError('manifest {}: subject record without id'.format(fn))

        subject_id = str(s['id'])
        if subject_id in seen:
            raise ValueError('manifest {}: duplicate subject id {}'.format(fn, subject_id))
        seen.add(subject_id)

        genuine = s.get('genuine', [])
        imposter = s.get('imposter', [])
        _check_paths(subject_id, 'genuine', genuine)
        _check_paths(subject_id, 'imposter', imposter)

        if len(genuine) < P:
            raise ValueError('subject {}: {} genuine samples, training_count is {}'.format(subject_id, len(genuine), P))

        ret.append(
            SubjectRecord(
                id=subject_id,
                genuine=[os.path.join(root, p) for p in genuine],
                imposter=[os.path.join(root, p) for p in imposter]
            )
        )

    return Manifest(
        path=fn,
        modality=modality,
        database=doc.get('database'),
        training_count=P,
        subjects=ret
    )
