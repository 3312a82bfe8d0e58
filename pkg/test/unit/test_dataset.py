"""Unit tests for the dataset module"""

import json
import os
import shutil
import tempfile
from unittest import TestCase
import mock
import numpy as np
from main import dataset
from main import imaging
from main import mvqc
from main import signature



def page(seed):

    rng = np.random.RandomState(seed)
    img = np.full((120, 160), 255, dtype=np.uint8)
    y, x = rng.randint(5, 40), rng.randint(5, 60)
    img[y:y + 50, x:x + 70] = 0
    img[y + 10:y + 20, x + 10:x + 60] = 255
    return img


class CorpusTestCase(TestCase):


    def setUp(self):

        self.tmp = tempfile.mkdtemp()

        subjects = []
        for n, subject_id in enumerate(['s1', 's2']):
            genuine = []
            for k in range(3):
                rel = '{}/g{}.pgm'.format(subject_id, k)
                os.makedirs(os.path.join(self.tmp, subject_id), exist_ok=True)
                imaging.write_pgm(os.path.join(self.tmp, rel), page(10 * n + k))
                genuine.append(rel)
            subjects.append({'id': subject_id, 'genuine': genuine, 'imposter': []})

        # Blank page: decodes, but preprocessing fails
        imaging.write_pgm(os.path.join(self.tmp, 'blank.pgm'), np.full((50, 50), 255, dtype=np.uint8))
        subjects[0]['imposter'] = ['blank.pgm', 's2/g0.pgm']

        self.manifest = os.path.join(self.tmp, 'manifest.json')
        with open(self.manifest, 'w') as f:
            json.dump({'modality': 'signature', 'training_count': 2, 'subjects': subjects}, f)


    def tearDown(self):

        shutil.rmtree(self.tmp)


class TestDataset(CorpusTestCase):


    def test_load_dataset(self):

        ds = dataset.load_dataset(self.manifest)
        self.assertEqual(len(ds), 2)
        self.assertEqual(list(ds.subjects), ['s1', 's2'])
        self.assertEqual(ds.modality, 'signature')
        self.assertEqual(ds.training_count, 2)
        self.assertEqual(len(ds.paths()), 7)


    def test_missing_sample(self):

        os.remove(os.path.join(self.tmp, 's2', 'g1.pgm'))
        with self.assertRaises(IOError) as cm:
            dataset.load_dataset(self.manifest)
        self.assertIn('subject s2', str(cm.exception))


    def test_lazy_and_eager_loading(self):

        with mock.patch('main.imaging.read_image', side_effect=imaging.read_image) as read:
            ds = dataset.load_dataset(self.manifest)
            self.assertEqual(read.call_count, 0)

            fn = ds.subjects['s1'].genuine[0]
            first = ds.image(fn)
            second = ds.image(fn)
            self.assertIs(first, second)
            self.assertEqual(read.call_count, 1)

        with mock.patch('main.imaging.read_image', side_effect=imaging.read_image) as read:
            dataset.load_dataset(self.manifest, eager=True)
            self.assertEqual(read.call_count, 7)


    def test_undecodable_sample_names_the_subject(self):

        with open(os.path.join(self.tmp, 's1', 'g2.pgm'), 'w') as f:
            f.write('garbage')

        ds = dataset.load_dataset(self.manifest)
        with self.assertRaises(IOError) as cm:
            ds.image(ds.subjects['s1'].genuine[2])
        self.assertIn('subject s1', str(cm.exception))


class TestFeatureBank(CorpusTestCase):


    def test_moments_match_direct_computation(self):

        ds = dataset.load_dataset(self.manifest)
        bank = dataset.FeatureBank(ds)
        fn = ds.subjects['s2'].genuine[1]

        img = signature.preprocess_signature(imaging.read_image(fn))
        expected = mvqc.component_moments(img, 128, 'C', 'binary')
        np.testing.assert_array_equal(bank.moments(fn, 128, 'C', mass='binary'), expected)
        self.assertIs(bank.moments(fn, 128, 'C', mass='binary'), bank.moments(fn, 128, 'C', mass='binary'))


    def test_failed_sample_is_remembered(self):

        ds = dataset.load_dataset(self.manifest)
        bank = dataset.FeatureBank(ds)
        fn = ds.subjects['s1'].imposter[0]

        with mock.patch('main.signature.preprocess_signature', side_effect=signature.preprocess_signature) as prep:
            for _ in range(2):
                with self.assertRaises(ValueError) as cm:
                    bank.prepared(fn)
                self.assertIn('blank signature', str(cm.exception))
            self.assertEqual(prep.call_count, 1)


    def test_precompute_threads(self):

        ds = dataset.load_dataset(self.manifest)
        single = dataset.FeatureBank(ds)
        pooled = dataset.FeatureBank(ds)
        single.precompute(ds.paths(), 64, 'A', mass='binary', threads=1)
        pooled.precompute(ds.paths(), 64, 'A', mass='binary', threads=4)

        for fn in ds.paths():
            if fn.endswith('blank.pgm'):
                continue
            np.testing.assert_array_equal(single.moments(fn, 64, 'A', mass='binary'), pooled.moments(fn, 64, 'A', mass='binary'))
