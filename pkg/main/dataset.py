"""Dataset ingestion and the per-sample feature cache."""

from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
import os
import threading
import numpy as np
from . import helper
from . import imaging
from . import mvqc
from . import parsers


class Dataset(object):


    def __init__(self, manifest, eager=False):

        self.manifest = manifest
        self.modality = manifest.modality
        self.database = manifest.database
        self.training_count = manifest.training_count
        self.subjects = OrderedDict((s.id, s) for s in manifest.subjects)
        self.eager = eager

        # A path belongs to the subject listing it as genuine, else to the first listing it
        self._owner = OrderedDict()
        for s in manifest.subjects:
            for fn in s.genuine:
                self._owner.setdefault(fn, s.id)
        for s in manifest.subjects:
            for fn in s.imposter:
                self._owner.setdefault(fn, s.id)

        self._images = {}
        self._lock = threading.Lock()


    def __len__(self):

        return len(self.subjects)


    def paths(self):
        """Every distinct sample path, in manifest order."""

        return list(self._owner.keys())


    def image(self, fn):

        with self._lock:
            if fn in self._images:
                return self._images[fn]

        try:
            img = imaging.read_image(fn)
        except IOError as err:
            raise IOError('{} (subject {})'.format(err, self._owner.get(fn, '?')))

        with self._lock:
            self._images.setdefault(fn, img)
        return img


    def load_all(self):

        for fn in self.paths():
            self.image(fn)


def load_dataset(manifest_path, eager=False):

    manifest = parsers.read_manifest(manifest_path)

    for s in manifest.subjects:
        for fn in s.genuine + s.imposter:
            if not os.path.isfile(fn):
                raise IOError('missing file: {} (subject {})'.format(fn, s.id))

    ret = Dataset(manifest, eager)
    if eager:
        ret.load_all()
    return ret


class SampleFailure(object):
    """A sample whose decoding or preprocessing failed; kept so the failure is reported once per lookup."""


    def __init__(self, message):

        self.message = message


class FeatureBank(object):
    """Cache of preprocessed images and component moment vectors, shared by every grid point of a run."""


    def __init__(self, dataset, window=None, swap_axes=True):

        self.dataset = dataset
        self.window = window
        self.swap_axes = swap_axes
        self._prepared = {}
        self._moments = {}
        self._lock = threading.Lock()


    def prepared(self, fn):

        with self._lock:
            hit = self._prepared.get(fn)
        if hit is None:
            try:
                img = helper.preprocess_sample(self.dataset.image(fn), self.dataset.modality, self.window, self.swap_axes)
                hit = np.ascontiguousarray(img, dtype=np.uint8)
            except (IOError, ValueError) as err:
                hit = SampleFailure('{}: {}'.format(fn, err))
            with self._lock:
                self._prepared.setdefault(fn, hit)

        if isinstance(hit, SampleFailure):
            raise ValueError(hit.message)
        return hit


    def moments(self, fn, d1, kind, order='morton', mass='gray'):

        key = (fn, d1, kind, order, mass)
        with self._lock:
            hit = self._moments.get(key)
        if hit is None:
            hit = mvqc.component_moments(self.prepared(fn), d1, kind, mass, order)
            with self._lock:
                self._moments.setdefault(key, hit)
        return hit


    def precompute(self, paths, d1, kind, order='morton', mass='gray', threads=1):

        def work(fn):
            try:
                self.moments(fn, d1, kind, order, mass)
            except ValueError:
                pass

        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(work, paths))
