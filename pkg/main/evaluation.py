"""Enrollment/verification protocol and FRR/FAR reports.

For every grid point each subject is enrolled on its first P genuine
samples; the remaining genuine samples are the FRR trials and the imposter
samples are the FAR trials.
"""

from __future__ import division
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
import time
import numpy as np
from scipy.spatial.distance import pdist, squareform
from . import checks
from . import classifiers
from . import dataset as datasets
from . import helper
from . import mvqc
from . import parsers


REPORT_FORMAT = 'mvqc-report'
REPORT_VERSION = 1


def silhouette_score(values, assignments, metric='euclidean'):
    """Mean silhouette coefficient; members of singleton clusters score 0."""

    X = np.asarray(values, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    labels = np.asarray(assignments)

    clusters = sorted(set(labels.tolist()))
    if len(clusters) < 2:
        raise ValueError('silhouette needs at least two clusters')

    D = squareform(pdist(X, metric=metric))
    s = np.zeros(len(X))

    for i in range(len(X)):
        own = labels == labels[i]
        if own.sum() == 1:
            continue
        a = D[i, own].sum() / (own.sum() - 1)
        b = min(D[i, labels == c].mean() for c in clusters if c != labels[i])
        if max(a, b) > 0:
            s[i] = (b - a) / max(a, b)

    return float(s.mean())


def _mean_or_none(values):

    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


class SubjectResult(object):


    def __init__(self, subject_id, indices, H, genuine_tested, genuine_rejected, imposter_tested, imposter_accepted, silhouette=None):

        self.subject_id = subject_id
        self.indices = [int(i) for i in indices]
        self.H = [float(h) for h in H]
        self.genuine_tested = int(genuine_tested)
        self.genuine_rejected = int(genuine_rejected)
        self.imposter_tested = int(imposter_tested)
        self.imposter_accepted = int(imposter_accepted)
        self.silhouette = silhouette


    @property
    def frr(self):

        return 100 * self.genuine_rejected / self.genuine_tested if self.genuine_tested else None


    @property
    def far(self):

        return 100 * self.imposter_accepted / self.imposter_tested if self.imposter_tested else None


    def to_dict(self):

        return OrderedDict([
            ('subject_id', self.subject_id),
            ('indices', self.indices),
            ('H', self.H),
            ('genuine_tested', self.genuine_tested),
            ('genuine_rejected', self.genuine_rejected),
            ('imposter_tested', self.imposter_tested),
            ('imposter_accepted', self.imposter_accepted),
            ('frr', self.frr),
            ('far', self.far),
            ('silhouette', self.silhouette)
        ])


    @classmethod
    def from_dict(cls, d):

        return cls(
            d['subject_id'], d['indices'], d['H'],
            d['genuine_tested'], d['genuine_rejected'],
            d['imposter_tested'], d['imposter_accepted'],
            d.get('silhouette')
        )


class RunResult(object):
    """Outcome of one grid point: (classifier, d1, b, moment kind)."""


    def __init__(self, classifier, d1, b, kind, subjects, skipped=None, warnings=None):

        self.classifier = classifier
        self.d1 = int(d1)
        self.b = int(b)
        self.kind = kind
        self.subjects = list(subjects)
        self.skipped = list(skipped or [])
        self.warnings = list(warnings or [])


    @property
    def frr(self):

        return _mean_or_none([s.frr for s in self.subjects])


    @property
    def far(self):

        return _mean_or_none([s.far for s in self.subjects])


    @property
    def zero_frr(self):

        return sum(1 for s in self.subjects if s.frr == 0)


    @property
    def zero_far(self):

        return sum(1 for s in self.subjects if s.far == 0)


    @property
    def silhouette(self):

        return _mean_or_none([s.silhouette for s in self.subjects])


    def to_dict(self):

        return OrderedDict([
            ('classifier', self.classifier),
            ('d1', self.d1),
            ('b', self.b),
            ('kind', self.kind),
            ('frr', self.frr),
            ('far', self.far),
            ('zero_frr', self.zero_frr),
            ('zero_far', self.zero_far),
            ('subjects_evaluated', len(self.subjects)),
            ('silhouette', self.silhouette),
            ('skipped', self.skipped),
            ('warnings', self.warnings),
            ('per_subject', [s.to_dict() for s in self.subjects])
        ])


    @classmethod
    def from_dict(cls, d):

        return cls(
            d['classifier'], d['d1'], d['b'], d['kind'],
            [SubjectResult.from_dict(s) for s in d['per_subject']],
            d.get('skipped'), d.get('warnings')
        )


class EvalReport(object):


    def __init__(self, modality, database, training_count, subject_count, config, runs, wall_clock=None):

        self.modality = modality
        self.database = database
        self.training_count = int(training_count)
        self.subject_count = int(subject_count)
        self.config = OrderedDict(config)
        self.runs = list(runs)
        self.wall_clock = wall_clock


    def __eq__(self, other):

        return isinstance(other, EvalReport) and self.to_dict() == other.to_dict()


    def to_dict(self):

        ret = OrderedDict([
            ('format', REPORT_FORMAT),
            ('version', REPORT_VERSION),
            ('modality', self.modality),
            ('database', self.database),
            ('training_count', self.training_count),
            ('subject_count', self.subject_count),
            ('config', self.config),
            ('runs', [r.to_dict() for r in self.runs])
        ])
        if self.wall_clock is not None:
            ret['wall_clock'] = self.wall_clock
        return ret


    @classmethod
    def from_dict(cls, d):

        if d.get('format') != REPORT_FORMAT:
            raise ValueError('not a report document')
        return cls(
            d['modality'], d['database'], d['training_count'], d['subject_count'], d['config'],
            [RunResult.from_dict(r) for r in d['runs']],
            d.get('wall_clock')
        )


def imposter_trials(ds, subject, cap=0):
    """Manifest imposters, or the other subjects' test samples when none are listed."""

    if subject.imposter:
        return list(subject.imposter)

    P = ds.training_count
    ret = [fn for other in ds.subjects.values() if other.id != subject.id for fn in other.genuine[P:]]
    return ret[:cap] if cap > 0 else ret


def _summations(bank, paths, template, mass, warnings, subject_id, what):

    ret = []
    for fn in paths:
        try:
            values = bank.moments(fn, template.d1, template.kind, template.tile_order, mass)
            ret.append(mvqc.moment_summation(values, template))
        except ValueError as err:
            warnings.append('subject {}: {} sample failed, counted as rejection: {}'.format(subject_id, what, err))
            ret.append(None)
    return ret


def evaluate_subject(ds, bank, subject, point):
    """(SubjectResult or None, warnings) for one subject at one grid point."""

    warnings = []
    P = ds.training_count
    mass = helper.mass_for(ds.modality, point)

    if len(subject.genuine) <= P:
        return None, ['subject {}: {} genuine samples leave no test trials with training_count {}; skipped'.format(subject.id, len(subject.genuine), P)]

    try:
        tm = np.array([bank.moments(fn, point['D1'], point['MOMENT'], point['TILE_ORDER'], mass) for fn in subject.genuine[:P]])
    except ValueError as err:
        return None, ['subject {}: training sample failed; skipped: {}'.format(subject.id, err)]

    template = mvqc.enroll_matrix(subject.id, tm, point['MOMENT'], point['D1'], point['B'], point['TILE_ORDER'], mass)

    imposters = imposter_trials(ds, subject, point['IMPOSTER_CAP'])
    n_train = min(point['TRAINING_IMPOSTERS'], len(imposters))
    training_imposters, imposters = imposters[:n_train], imposters[n_train:]

    train_values = []
    for fn in training_imposters:
        try:
            values = bank.moments(fn, template.d1, template.kind, template.tile_order, mass)
            train_values.append(mvqc.moment_summation(values, template))
        except ValueError as err:
            warnings.append('subject {}: training imposter ignored: {}'.format(subject.id, err))

    verifier = classifiers.make_verifier(point['CLASSIFIER'], point['FUZZIFIER'], point['EPSILON'], point['MAX_ITERATIONS'])
    try:
        verifier.fit(template.features, train_values)
    except RuntimeError as err:
        return None, warnings + ['subject {}: {} fit failed; skipped: {}'.format(subject.id, point['CLASSIFIER'], err)]

    genuine_values = _summations(bank, subject.genuine[P:], template, mass, warnings, subject.id, 'genuine')
    imposter_values = _summations(bank, imposters, template, mass, warnings, subject.id, 'imposter')

    genuine_decisions = [False if v is None else verifier.decide(v)[0] for v in genuine_values]
    imposter_decisions = [False if v is None else verifier.decide(v)[0] for v in imposter_values]

    # Accept/reject partition of the scored trials
    scored = [(v, d) for v, d in zip(genuine_values + imposter_values, genuine_decisions + imposter_decisions) if v is not None]
    metric = 'cityblock' if point['CLASSIFIER'] == 'kmeans-cityblock' else 'euclidean'
    silhouette = None
    if len(set(d for _, d in scored)) == 2:
        silhouette = silhouette_score([v for v, _ in scored], [1 if d else 2 for _, d in scored], metric)

    result = SubjectResult(
        subject.id, template.indices, template.features,
        genuine_tested=len(genuine_values),
        genuine_rejected=sum(1 for d in genuine_decisions if not d),
        imposter_tested=len(imposter_values),
        imposter_accepted=sum(1 for d in imposter_decisions if d),
        silhouette=silhouette
    )
    return result, warnings


def run_grid_point(ds, bank, point, progress=None):

    checks.validate(point, ds.modality)

    if ds.modality == 'iris' and bank.window is None:
        raise ValueError('iris evaluation needs window offsets')

    mass = helper.mass_for(ds.modality, point)
    bank.precompute(ds.paths(), point['D1'], point['MOMENT'], point['TILE_ORDER'], mass, point['THREADS'])

    subjects = list(ds.subjects.values())
    with ThreadPoolExecutor(max_workers=point['THREADS']) as ex:
        outcomes = list(ex.map(lambda s: evaluate_subject(ds, bank, s, point), subjects))

    results, skipped, warnings = [], [], []
    for subject, (result, w) in zip(subjects, outcomes):
        warnings.extend(w)
        if result is None:
            skipped.append(subject.id)
        else:
            results.append(result)
        if progress is not None:
            progress()

    return RunResult(point['CLASSIFIER'], point['D1'], point['B'], point['MOMENT'], results, skipped, warnings)


def run_experiment(ds, config, progress=None):
    """EvalReport over every grid point of config, in expand_grid order."""

    start = time.time()

    if len(ds) == 0:
        raise ValueError('no subjects')

    window = helper.window_for_config(ds.modality, ds.database, config)
    bank = datasets.FeatureBank(ds, window, config['SWAP_AXES'])

    runs = [run_grid_point(ds, bank, point, progress) for point in parsers.expand_grid(config)]

    echo = parsers.config_to_dict(config)
    if window is not None:
        echo['offset_1'], echo['offset_2'] = window.offset_1, window.offset_2

    return EvalReport(
        ds.modality, ds.database, ds.training_count, len(ds), echo, runs,
        wall_clock=round(time.time() - start, 3) if config['RECORD_TIMING'] else None
    )
