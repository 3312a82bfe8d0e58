"""Decision back-ends over scalar moment summation values.

Every verifier is trained on the subject's training summations H (optionally
joined by imposter summations for the clustering back-ends) and answers
accept/reject for a claimant's summation. Comparisons against a boundary
carry a relative slack of REL_TOL times the scale of the data, so a value
exactly on the boundary is accepted.
"""

from __future__ import division
import numpy as np
from scipy.spatial import distance


REL_TOL = 1e-12

METRICS = ('euclidean', 'cityblock')

DEFAULT_FUZZIFIER = 2.0
DEFAULT_EPSILON = 1e-5
DEFAULT_MAX_ITERATIONS = 300

# Distance of the fuzzy k-nn rejection anchor above the reference mean, in units of theta
ANCHOR_SPAN = 2.0


def _as_values(values):

    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise ValueError('empty input')
    return values


def _slack(*arrays):

    scale = max(float(np.max(np.abs(a))) if np.size(a) else 0.0 for a in arrays)
    return REL_TOL * scale


def pairwise_distance(values, centers, metric='euclidean'):
    """(n, k) distances between n feature vectors and k centers."""

    if metric not in METRICS:
        raise ValueError('unknown metric: {}'.format(metric))

    values = np.asarray(values, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.float64)

    # On scalar features both metrics are |x - c|
    if values.ndim == 1 and centers.ndim == 1:
        return np.abs(values[:, None] - centers[None, :])

    return distance.cdist(np.atleast_2d(values), np.atleast_2d(centers), metric=metric)


def initial_centroids(H):

    H = _as_values(H)
    m1, m2 = float(H.min()), float(H.max())
    threshold = 2 * m2 if m2 > 0 else m2 + 1
    return m1, (m1 + threshold) / 2


def nearest_cluster(values, centroids, metric='euclidean'):
    """0-based nearest centroid per value; ties go to the lower index."""

    d = pairwise_distance(values, centroids, metric)
    return np.argmin(d, axis=1)


def wcss(values, centroids, assignments):

    values = np.asarray(values, dtype=np.float64)
    centroids = np.asarray(centroids, dtype=np.float64)
    return float(np.sum((values - centroids[assignments]) ** 2))


class CentroidModel(object):


    def __init__(self, centroids, metric='euclidean', assignments=None, objectives=None):

        self.centroids = [float(c) for c in centroids]
        self.metric = metric
        self.assignments = [] if assignments is None else [int(a) for a in assignments]
        self.objectives = [] if objectives is None else [float(o) for o in objectives]
        self.genuine_cluster = 1

        if len(self.centroids) < 1 or not np.all(np.isfinite(self.centroids)):
            raise ValueError('centroids must be finite and non-empty: {}'.format(self.centroids))


    @property
    def k(self):

        return len(self.centroids)


    @property
    def iterations(self):

        return len(self.objectives)


    def classify(self, value):
        """1-based cluster of value."""

        d = pairwise_distance(np.array([value], dtype=np.float64), np.array(self.centroids), self.metric)[0]
        tol = _slack(np.array(self.centroids), value)
        if d[0] <= d.min() + tol:
            return 1
        return int(np.argmin(d)) + 1


def kmeans_fit(values, k=2, metric='euclidean', init=None, max_iter=DEFAULT_MAX_ITERATIONS):

    values = _as_values(values)
    if k > len(values):
        raise ValueError('k={} exceeds the number of values n={}'.format(k, len(values)))
    if init is None:
        init = initial_centroids(values) if k == 2 else values[:k]
    if len(init) != k:
        raise ValueError('expected {} initial centroids, got {}'.format(k, len(init)))

    centroids = np.array(init, dtype=np.float64)
    assignments = nearest_cluster(values, centroids, metric)
    objectives = []

    for _ in range(max_iter):

        for j in range(k):
            members = values[assignments == j]
            # An empty cluster keeps its previous centroid
            if len(members) > 0:
                centroids[j] = members.mean()

        objectives.append(wcss(values, centroids, assignments))

        new_assignments = nearest_cluster(values, centroids, metric)
        if np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments

    return CentroidModel(centroids, metric, assignments + 1, objectives)


def kmeans_classify(model, value):

    return model.classify(value)


def memberships(values, centers, m=DEFAULT_FUZZIFIER):
    """Fuzzy partition rows of values against centers.

    A value coinciding with a center gets membership 1 there (the lowest such
    center) and 0 elsewhere.
    """

    d = pairwise_distance(np.asarray(values, dtype=np.float64), np.asarray(centers, dtype=np.float64))
    U = np.zeros_like(d)

    hit = d == 0
    singular = hit.any(axis=1)
    U[singular, np.argmax(hit[singular], axis=1)] = 1.0

    rest = ~singular
    if rest.any():
        # Ratios against the row minimum keep the powers bounded
        r = d[rest] / d[rest].min(axis=1)[:, None]
        w = r ** (-2.0 / (m - 1))
        U[rest] = w / w.sum(axis=1)[:, None]

    return U


def fuzzy_objective(values, centers, U, m=DEFAULT_FUZZIFIER):

    d = pairwise_distance(np.asarray(values, dtype=np.float64), np.asarray(centers, dtype=np.float64))
    return float(np.sum(U ** m * d ** 2))


def cluster_of(membership_row):
    """1-based argmax of a membership row; ties go to the lower cluster."""

    return int(np.argmax(np.asarray(membership_row, dtype=np.float64))) + 1


class FuzzyModel(object):


    def __init__(self, centers, m=DEFAULT_FUZZIFIER, epsilon=DEFAULT_EPSILON, partition=None, objectives=None, deltas=None):

        if m <= 1:
            raise ValueError('fuzzifier must exceed 1, got {}'.format(m))

        self.centers = [float(c) for c in centers]
        self.m = float(m)
        self.epsilon = float(epsilon)
        self.partition = [] if partition is None else [list(map(float, row)) for row in partition]
        self.objectives = [] if objectives is None else [float(o) for o in objectives]
        self.deltas = [] if deltas is None else [float(x) for x in deltas]
        self.genuine_cluster = 1


    @property
    def iterations(self):

        return len(self.deltas)


    def memberships(self, value):

        return memberships(np.array([value], dtype=np.float64), np.array(self.centers), self.m)[0]


def fuzzy_fit(values, k=2, m=DEFAULT_FUZZIFIER, epsilon=DEFAULT_EPSILON, init=None, max_iter=DEFAULT_MAX_ITERATIONS):

    values = _as_values(values)
    if k > len(values):
        raise ValueError('k={} exceeds the number of values n={}'.format(k, len(values)))
    if m <= 1:
        raise ValueError('fuzzifier must exceed 1, got {}'.format(m))
    if init is None:
        init = initial_centroids(values) if k == 2 else values[:k]

    V = np.array(init, dtype=np.float64)
    U = memberships(values, V, m)
    objectives = []
    deltas = []

    for _ in range(max_iter):

        um = U ** m
        weight = um.sum(axis=0)
        live = weight > 0
        # A center with no membership mass stays where it is
        V[live] = (um[:, live] * values[:, None]).sum(axis=0) / weight[live]

        new_U = memberships(values, V, m)
        delta = float(np.max(np.abs(new_U - U)))
        U = new_U

        objectives.append(fuzzy_objective(values, V, U, m))
        deltas.append(delta)

        if delta < epsilon:
            return FuzzyModel(V, m, epsilon, U, objectives, deltas)

    raise RuntimeError('no convergence')


def fuzzy_classify(model, value):

    u = model.memberships(value)
    return u, cluster_of(u)


class KnnModel(object):


    def __init__(self, references, k_nn, theta, fuzzy=False, m=DEFAULT_FUZZIFIER):

        self.references = [float(h) for h in references]
        self.k_nn = int(k_nn)
        self.theta = float(theta)
        self.fuzzy = fuzzy
        self.m = float(m)

        if not 1 <= self.k_nn <= len(self.references):
            raise ValueError('k_nn={} outside 1..{}'.format(self.k_nn, len(self.references)))
        if self.theta < 0:
            raise ValueError('theta must be non-negative, got {}'.format(self.theta))


    @property
    def mean(self):

        return float(np.mean(self.references))


    @property
    def anchor(self):

        return self.mean + ANCHOR_SPAN * self.theta


    def nearest_distances(self, value):

        d = np.sort(np.abs(np.array(self.references) - value))
        return d[:self.k_nn]


    def mean_distance(self, value):

        return float(np.mean(self.nearest_distances(value)))


def neighbour_count(P):

    return max(1, int(np.floor(np.sqrt(P) + 0.5)))


def leave_one_out_radius(H, k_nn):

    H = np.asarray(H, dtype=np.float64)
    radius = 0.0
    for s in range(len(H)):
        others = np.sort(np.abs(np.delete(H, s) - H[s]))
        radius = max(radius, float(np.mean(others[:k_nn])))
    return radius


def knn_fit(H, fuzzy=False, m=DEFAULT_FUZZIFIER):

    H = _as_values(H)
    if len(H) < 2:
        raise ValueError('k-nn needs at least two references, got {}'.format(len(H)))

    k_nn = neighbour_count(len(H))
    theta = leave_one_out_radius(H, k_nn)

    return KnnModel(H, k_nn, theta, fuzzy, m)


def knn_classify(model, value):

    tol = _slack(np.array(model.references), value)
    return model.mean_distance(value) <= model.theta + tol


def fuzzy_knn_membership(model, value):
    """Genuine membership of value among its k_nn nearest neighbours.

    The neighbours are drawn from the references (membership 1) joined by a
    single rejection anchor of membership 0 at model.anchor, and weighted by
    1/dist^(2/(m-1)). A value equal to a reference has membership 1, and a
    value at or above the anchor has membership 0. With theta = 0 only a
    value equal to a reference is genuine.
    """

    if not model.fuzzy:
        raise ValueError('model was not fitted for fuzzy k-nn')

    refs = np.array(model.references)
    tol = _slack(refs, value, model.anchor)

    if float(np.min(np.abs(refs - value))) <= tol:
        return 1.0
    if model.theta == 0 or value >= model.anchor - tol:
        return 0.0

    points = np.append(refs, model.anchor)
    labels = np.append(np.ones(len(refs)), 0.0)
    nearest = np.argsort(np.abs(points - value), kind='mergesort')[:model.k_nn]
    d = np.abs(points[nearest] - value)

    w = (d / d.min()) ** (-2.0 / (model.m - 1))
    return float((w * labels[nearest]).sum() / w.sum())


def fuzzy_knn_classify(model, value):

    u = fuzzy_knn_membership(model, value)
    return u, u >= 0.5


class ThresholdModel(object):


    def __init__(self, mean, factor, kind, scale=0.0):

        if factor < 0:
            raise ValueError('threshold factor must be non-negative, got {}'.format(factor))
        self.mean = float(mean)
        self.factor = float(factor)
        self.kind = kind
        self.scale = float(scale)


def avg_fit(H):

    H = _as_values(H)
    mu = float(np.mean(H))
    return ThresholdModel(mu, float(np.mean(np.abs(H - mu))), 'avg', float(np.max(np.abs(H))))


def avgmax_fit(H):

    H = _as_values(H)
    mu = float(np.mean(H))
    return ThresholdModel(mu, max(0.0, float(np.max(H)) - mu), 'avgmax', float(np.max(np.abs(H))))


def avg_decide(tm, value):

    tol = REL_TOL * max(tm.scale, abs(value))
    return abs(value - tm.mean) <= tm.factor + tol


def avgmax_decide(tm, value):

    tol = REL_TOL * max(tm.scale, abs(value))
    return value - tm.mean <= tm.factor + tol


class Verifier(object):
    """Common face of the seven classifier configurations."""

    classifier_id = None


    def __init__(self, fuzzifier=DEFAULT_FUZZIFIER, epsilon=DEFAULT_EPSILON, max_iterations=DEFAULT_MAX_ITERATIONS):

        self.fuzzifier = float(fuzzifier)
        self.epsilon = float(epsilon)
        self.max_iterations = int(max_iterations)
        self.model = None


    def fit(self, genuine, imposters=()):

        raise NotImplementedError


    def decide(self, value):
        """(accept, score) for one moment summation value."""

        raise NotImplementedError


    def _check_fitted(self):

        if self.model is None:
            raise ValueError('{} verifier is not fitted'.format(self.classifier_id))


    def to_dict(self):

        self._check_fitted()
        return {
            'classifier': self.classifier_id,
            'fuzzifier': self.fuzzifier,
            'epsilon': self.epsilon,
            'max_iterations': self.max_iterations,
            'model': self._model_dict()
        }


    @classmethod
    def from_dict(cls, d):

        ret = cls(d.get('fuzzifier', DEFAULT_FUZZIFIER), d.get('epsilon', DEFAULT_EPSILON), d.get('max_iterations', DEFAULT_MAX_ITERATIONS))
        ret.model = ret._model_from_dict(d['model'])
        return ret


class KMeansVerifier(Verifier):

    metric = None


    def fit(self, genuine, imposters=()):

        values = np.concatenate([_as_values(genuine), np.asarray(imposters, dtype=np.float64).ravel()])
        self.model = kmeans_fit(values, 2, self.metric, initial_centroids(genuine), self.max_iterations)
        return self


    def decide(self, value):

        self._check_fitted()
        cluster = kmeans_classify(self.model, value)
        return cluster == self.model.genuine_cluster, abs(value - self.model.centroids[0])


    def _model_dict(self):

        return {
            'centroids': self.model.centroids,
            'metric': self.model.metric,
            'assignments': self.model.assignments,
            'objectives': self.model.objectives
        }


    def _model_from_dict(self, d):

        return CentroidModel(d['centroids'], d['metric'], d.get('assignments'), d.get('objectives'))


class EuclideanKMeansVerifier(KMeansVerifier):

    classifier_id = 'kmeans-euclidean'
    metric = 'euclidean'


class CityblockKMeansVerifier(KMeansVerifier):

    classifier_id = 'kmeans-cityblock'
    metric = 'cityblock'


class FuzzyKMeansVerifier(Verifier):

    classifier_id = 'fuzzy-kmeans'


    def fit(self, genuine, imposters=()):

        values = np.concatenate([_as_values(genuine), np.asarray(imposters, dtype=np.float64).ravel()])
        self.model = fuzzy_fit(values, 2, self.fuzzifier, self.epsilon, initial_centroids(genuine), self.max_iterations)
        return self


    def decide(self, value):

        self._check_fitted()
        u, cluster = fuzzy_classify(self.model, value)
        return cluster == self.model.genuine_cluster, float(u[0])


    def _model_dict(self):

        return {
            'centers': self.model.centers,
            'partition': self.model.partition,
            'objectives': self.model.objectives,
            'deltas': self.model.deltas
        }


    def _model_from_dict(self, d):

        return FuzzyModel(d['centers'], self.fuzzifier, self.epsilon, d.get('partition'), d.get('objectives'), d.get('deltas'))


class KnnVerifier(Verifier):

    classifier_id = 'knn'
    fuzzy = False


    def fit(self, genuine, imposters=()):

        self.model = knn_fit(genuine, self.fuzzy, self.fuzzifier)
        return self


    def decide(self, value):

        self._check_fitted()
        return knn_classify(self.model, value), self.model.mean_distance(value)


    def _model_dict(self):

        return {
            'references': self.model.references,
            'k_nn': self.model.k_nn,
            'theta': self.model.theta
        }


    def _model_from_dict(self, d):

        return KnnModel(d['references'], d['k_nn'], d['theta'], self.fuzzy, self.fuzzifier)


class FuzzyKnnVerifier(KnnVerifier):

    classifier_id = 'fuzzy-knn'
    fuzzy = True


    def decide(self, value):

        self._check_fitted()
        u, accept = fuzzy_knn_classify(self.model, value)
        return accept, u


class ThresholdVerifier(Verifier):

    fit_model = None
    decide_model = None


    def fit(self, genuine, imposters=()):

        self.model = type(self).fit_model(genuine)
        return self


    def decide(self, value):

        self._check_fitted()
        return type(self).decide_model(self.model, value), value - self.model.mean


    def _model_dict(self):

        return {'mean': self.model.mean, 'factor': self.model.factor, 'scale': self.model.scale}


    def _model_from_dict(self, d):

        return ThresholdModel(d['mean'], d['factor'], self.classifier_id, d.get('scale', 0.0))


class AvgVerifier(ThresholdVerifier):

    classifier_id = 'avg'
    fit_model = staticmethod(avg_fit)
    decide_model = staticmethod(avg_decide)


class AvgMaxVerifier(ThresholdVerifier):

    classifier_id = 'avgmax'
    fit_model = staticmethod(avgmax_fit)
    decide_model = staticmethod(avgmax_decide)


VERIFIERS = (
    EuclideanKMeansVerifier,
    CityblockKMeansVerifier,
    FuzzyKMeansVerifier,
    KnnVerifier,
    FuzzyKnnVerifier,
    AvgVerifier,
    AvgMaxVerifier
)

CLASSIFIER_IDS = tuple(v.classifier_id for v in VERIFIERS)

_REGISTRY = dict((v.classifier_id, v) for v in VERIFIERS)


def make_verifier(classifier_id, fuzzifier=DEFAULT_FUZZIFIER, epsilon=DEFAULT_EPSILON, max_iterations=DEFAULT_MAX_ITERATIONS):

    if classifier_id not in _REGISTRY:
        raise ValueError('unknown classifier: {}'.format(classifier_id))
    return _REGISTRY[classifier_id](fuzzifier, epsilon, max_iterations)


def verifier_from_dict(d):

    if d is None or d.get('classifier') not in _REGISTRY:
        raise ValueError('unknown classifier in model document: {}'.format(None if d is None else d.get('classifier')))

    try:
        return _REGISTRY[d['classifier']].from_dict(d)
    except KeyError as err:
        raise ValueError('malformed {} model document: missing {}'.format(d['classifier'], err))
    except TypeError as err:
        raise ValueError('malformed {} model document: {}'.format(d['classifier'], err))
