"""Minimum variance quadtree components (MVQC).

A subject is enrolled from P genuine samples: every quadtree component gets
a moment value per sample, components whose variance over the samples is
below the average variance survive, and the filter repeats on the survivors
until b components remain. The template keeps those b component indices and
the moment summation values H of the training samples.
"""

import json
import numpy as np
from . import moments
from . import quadtree


TEMPLATE_FORMAT = 'mvqc-template'
TEMPLATE_VERSION = 1

TEMPLATE_KEYS = ('subject_id', 'kind', 'd1', 'b', 'indices', 'H')


class MvqcTemplate(object):


    def __init__(self, subject_id, kind, d1, b, indices, features, tile_order='morton', mass='binary'):

        self.subject_id = subject_id
        self.kind = moments.check_kind(kind)
        self.d1 = int(d1)
        self.b = int(b)
        self.indices = [int(i) for i in indices]
        self.features = [float(h) for h in features]
        self.tile_order = tile_order
        self.mass = mass

        if len(self.indices) != self.b:
            raise ValueError('template holds {} indices, expected b={}'.format(len(self.indices), self.b))
        if any(x >= y for x, y in zip(self.indices, self.indices[1:])):
            raise ValueError('template indices must be strictly increasing: {}'.format(self.indices))


    def __eq__(self, other):

        return isinstance(other, MvqcTemplate) and self.to_dict() == other.to_dict()


    def __repr__(self):

        return 'MvqcTemplate({}, kind={}, d1={}, indices={})'.format(self.subject_id, self.kind, self.d1, self.indices)


    def grid(self):

        return quadtree.decompose(self.d1, order=self.tile_order)


    def to_dict(self):

        return {
            'subject_id': self.subject_id,
            'kind': self.kind,
            'd1': self.d1,
            'b': self.b,
            'indices': list(self.indices),
            'H': list(self.features),
            'tile_order': self.tile_order,
            'mass': self.mass
        }


    @classmethod
    def from_dict(cls, d):

        return cls(
            d['subject_id'], d['kind'], d['d1'], d['b'], d['indices'], d['H'],
            tile_order=d.get('tile_order', 'morton'),
            mass=d.get('mass', 'binary')
        )


def component_moments(img, d1, kind, mass='binary', order='morton'):

    grid = quadtree.decompose(d1, order=order)
    return moments.hu_moments_batch(grid.tiles(moments.mass_image(img, mass)), kind)


def select_by_variance(variances, b, trace=None):
    """Iterative below-average filter over component variances; returns sorted 1-based indices."""

    variances = np.asarray(variances, dtype=np.float64)
    L = len(variances)
    if not 1 <= b <= L:
        raise ValueError('b={} outside 1..L={}'.format(b, L))

    survivors = list(range(L))
    while True:
        current = variances[survivors]
        avg = current.mean()
        below = [i for i in survivors if variances[i] < avg]
        if trace is not None:
            trace.append([i + 1 for i in below])

        if len(below) == b:
            return [i + 1 for i in below]

        if len(below) < b or len(below) == len(survivors):
            # Complete to exactly b: smallest variance first, lowest index on ties
            ranked = sorted(survivors, key=lambda i: (variances[i], i))
            return sorted(i + 1 for i in ranked[:b])

        survivors = below


def select_mvqc(tm, b, trace=None):

    tm = np.asarray(tm, dtype=np.float64)
    if tm.ndim != 2 or tm.shape[0] < 2:
        raise ValueError('training matrix needs at least two samples, got shape {}'.format(tm.shape))
    if b > tm.shape[1]:
        raise ValueError('b={} exceeds the number of components L={}'.format(b, tm.shape[1]))

    # Population variance over the P samples, taken about the first sample so
    # that a constant column has exactly zero variance
    return select_by_variance((tm - tm[0]).var(axis=0), b, trace)


def moment_summation(values, template):

    values = np.asarray(values, dtype=np.float64)
    return float(sum(values[i - 1] for i in template.indices))


def image_summation(img, template):

    return moment_summation(
        component_moments(img, template.d1, template.kind, template.mass, template.tile_order),
        template
    )


def enroll_matrix(subject_id, tm, kind, d1, b, tile_order='morton', mass='binary'):

    tm = np.asarray(tm, dtype=np.float64)
    indices = select_mvqc(tm, b)
    features = [float(sum(row[i - 1] for i in indices)) for row in tm]
    return MvqcTemplate(subject_id, kind, d1, b, indices, features, tile_order, mass)


def enroll(samples, d1, kind, b, subject_id='subject', tile_order='morton', mass='binary'):

    if len(samples) < 2:
        raise ValueError('at least two training samples are required, got {}'.format(len(samples)))

    tm = np.array([component_moments(img, d1, kind, mass, tile_order) for img in samples])
    return enroll_matrix(subject_id, tm, kind, d1, b, tile_order, mass)


def save_template(fn, template, model=None, preprocessing=None):

    doc = {
        'format': TEMPLATE_FORMAT,
        'version': TEMPLATE_VERSION,
        'template': template.to_dict(),
        'classifier': model,
        'preprocessing': preprocessing or {}
    }
    with open(fn, 'w') as f:
        json.dump(doc, f, indent=2)
        f.write('\n')


def _check_section(fn, name, section, keys):

    if not isinstance(section, dict):
        raise ValueError('malformed template document {}: "{}" must be an object'.format(fn, name))
    missing = [k for k in keys if k not in section]
    if missing:
        raise ValueError('malformed template document {}: "{}" lacks {}'.format(fn, name, ', '.join(missing)))


def load_template(fn):

    with open(fn) as f:
        doc = json.load(f)

    if not isinstance(doc, dict) or doc.get('format') != TEMPLATE_FORMAT:
        raise ValueError('not a template document: {}'.format(fn))
    if doc.get('version') != TEMPLATE_VERSION:
        raise ValueError('unsupported template version {}: {}'.format(doc.get('version'), fn))

    _check_section(fn, 'template', doc.get('template'), TEMPLATE_KEYS)

    model = doc.get('classifier')
    if model is not None:
        _check_section(fn, 'classifier', model, ('classifier', 'model'))

    prep = doc.get('preprocessing') or {}
    _check_section(fn, 'preprocessing', prep, ())
    if prep.get('modality') == 'iris':
        _check_section(fn, 'preprocessing', prep, ('offset_1', 'offset_2'))

    try:
        template = MvqcTemplate.from_dict(doc['template'])
    except (TypeError, ValueError) as err:
        raise ValueError('malformed template document {}: {}'.format(fn, err))

    return template, model, prep
