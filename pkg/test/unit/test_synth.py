"""Unit tests for the synth module"""

import json
import os
import shutil
import tempfile
from unittest import TestCase
import numpy as np
from main import imaging
from main import iris
from main import signature
from main import synth



def read_tree(root):

    ret = {}
    for dirpath, _, files in os.walk(root):
        for name in files:
            fn = os.path.join(dirpath, name)
            with open(fn, 'rb') as f:
                ret[os.path.relpath(fn, root)] = f.read()
    return ret


def corners(r, c):
    """Block-local positions of the pattern corner dots inside block (r, c)."""

    ret = set()
    for y, x in [(0, 0), (0, 511), (511, 0), (511, 511)]:
        if (y // 128, x // 128) == (r, c):
            ret.add((y - r * 128, x - c * 128))
    return ret


class TestSynth(TestCase):


    def setUp(self):

        self.tmp = tempfile.mkdtemp()


    def tearDown(self):

        shutil.rmtree(self.tmp)


    def test_same_seed_same_bytes(self):

        a = synth.synth_generate(11, 3, 'signature', 'medium', os.path.join(self.tmp, 'a'))
        b = synth.synth_generate(11, 3, 'signature', 'medium', os.path.join(self.tmp, 'b'))
        self.assertEqual(read_tree(os.path.dirname(a)), read_tree(os.path.dirname(b)))

        c = synth.synth_generate(12, 3, 'signature', 'medium', os.path.join(self.tmp, 'c'))
        self.assertNotEqual(read_tree(os.path.dirname(a)), read_tree(os.path.dirname(c)))


    def test_manifest(self):

        fn = synth.synth_generate(1, 4, 'signature', 'high', os.path.join(self.tmp, 'corpus'))
        with open(fn) as f:
            doc = json.load(f)

        self.assertEqual(doc['modality'], 'signature')
        self.assertEqual(doc['database'], synth.DATABASE)
        self.assertEqual(doc['training_count'], synth.TRAINING_COUNT)
        self.assertEqual([s['id'] for s in doc['subjects']], ['s001', 's002', 's003', 's004'])

        for s in doc['subjects']:
            self.assertEqual(len(s['genuine']), synth.SAMPLES_PER_SUBJECT)
            self.assertEqual(len(s['imposter']), 3 * (synth.SAMPLES_PER_SUBJECT - synth.TRAINING_COUNT))
            self.assertEqual(len(s['stable_blocks']), synth.STABLE_BLOCKS)
            for rel in s['genuine'] + s['imposter']:
                self.assertTrue(os.path.isfile(os.path.join(self.tmp, 'corpus', rel)))

        stable_sets = [tuple(s['stable_blocks']) for s in doc['subjects']]
        self.assertEqual(len(set(stable_sets)), 4)


    def test_single_subject(self):

        fn = synth.synth_generate(2, 1, 'iris', 'low', os.path.join(self.tmp, 'one'))
        with open(fn) as f:
            doc = json.load(f)
        self.assertEqual(len(doc['subjects']), 1)
        self.assertEqual(doc['subjects'][0]['imposter'], [])
        self.assertTrue(all(b - 1 in synth.iris_outer_blocks() for b in doc['subjects'][0]['stable_blocks']))


    def test_signature_samples_normalize_to_the_pattern(self):

        fn = synth.synth_generate(3, 2, 'signature', 'high', os.path.join(self.tmp, 'sig'))
        with open(fn) as f:
            doc = json.load(f)
        self.assertEqual(doc['noise_levels'], [1, 2, 8, 3, 4])

        root = os.path.dirname(fn)
        subject = doc['subjects'][0]
        images = [signature.preprocess_signature(imaging.read_image(os.path.join(root, rel))) for rel in subject['genuine']]

        disk = np.hypot(*np.mgrid[-64:64, -64:64]) <= 50
        for b in subject['stable_blocks']:
            r, c = divmod(b - 1, 4)
            blocks = [img[r * 128:(r + 1) * 128, c * 128:(c + 1) * 128] for img in images]

            # The disk is the same in every sample; the speckles around it nest
            for block in blocks[1:]:
                np.testing.assert_array_equal(block[disk], blocks[0][disk])

            ring = [set(zip(*np.nonzero(block * ~disk))) - corners(r, c) for block in blocks]
            self.assertEqual([len(s) for s in ring], doc['noise_levels'])
            order = sorted(range(len(ring)), key=lambda k: len(ring[k]))
            for small, large in zip(order, order[1:]):
                self.assertTrue(ring[small] <= ring[large])


    def test_iris_pupil_window(self):

        fn = synth.synth_generate(4, 1, 'iris', 'high', os.path.join(self.tmp, 'iris'))
        with open(fn) as f:
            doc = json.load(f)

        eye = imaging.read_image(os.path.join(os.path.dirname(fn), doc['subjects'][0]['genuine'][0]))
        self.assertEqual(eye.shape, (synth.EYE_SIZE, synth.EYE_SIZE))
        g = iris.detect_pupil(eye)
        self.assertEqual((g.x_c, g.y_c, g.radius), (synth.EYE_CENTRE, synth.EYE_CENTRE, synth.PUPIL_RADIUS))

        x, y, width, height = iris.window_rect(g, iris.window_for(synth.DATABASE))
        self.assertEqual((x, y, width, height), (synth.WINDOW_ORIGIN, synth.WINDOW_ORIGIN, synth.WINDOW_SIZE, synth.WINDOW_SIZE))

        # The iris texture is an annulus: dark and bright levels inside, none beyond the iris radius
        yy, xx = np.mgrid[:synth.EYE_SIZE, :synth.EYE_SIZE]
        r = np.hypot(yy - synth.EYE_CENTRE, xx - synth.EYE_CENTRE)
        annulus = eye[(r > synth.PUPIL_RADIUS + 1) & (r < synth.IRIS_RADIUS - 1)]
        self.assertTrue(np.all((annulus <= 45) | (annulus >= 200)))
        self.assertTrue(np.all(eye[r < synth.PUPIL_RADIUS - 1] == 0))
        self.assertTrue(np.all(eye[r > synth.IRIS_RADIUS + 1] >= 60))


    def test_iris_speckles_stay_in_their_block(self):

        ring = synth.ring_pixels(synth.IRIS_BLOCK, synth.IRIS_RING, synth.EDGE_MARGIN)
        self.assertGreater(len(ring), 8 * synth.noise_unit(1.0))
        self.assertTrue(np.all(ring >= synth.EDGE_MARGIN))
        self.assertTrue(np.all(ring < synth.IRIS_BLOCK - synth.EDGE_MARGIN))

        d = np.hypot(*(ring - synth.IRIS_BLOCK // 2).T)
        self.assertTrue(np.all((d >= 30) & (d <= 38)))


    def test_separation(self):

        self.assertEqual(synth.parse_separation('high'), 16.0)
        self.assertEqual(synth.parse_separation('LOW'), 1.0)
        self.assertEqual(synth.parse_separation('2.5'), 2.5)
        self.assertEqual(synth.noise_unit(16.0), 1)
        self.assertEqual(synth.noise_unit(4.0), 4)
        self.assertEqual(synth.noise_unit(1.0), 16)
        self.assertEqual(synth.noise_unit(100.0), 1)

        for bad in ['none', '-1', 0]:
            with self.assertRaises(ValueError):
                synth.parse_separation(bad)


    def test_noise_levels(self):

        self.assertEqual(synth.noise_levels(5, 3), [1, 2, 8, 3, 4])
        self.assertEqual(synth.noise_levels(5, 3, 4), [4, 8, 32, 12, 16])
        self.assertEqual(synth.noise_levels(4, 2), [1, 6, 2, 3])
        self.assertEqual(synth.noise_levels(3, 3), [1, 2, 8])

        # Test samples fall strictly inside the training range
        for P in range(2, 6):
            levels = synth.noise_levels(P + 4, P)
            self.assertTrue(all(min(levels[:P]) < n < max(levels[:P]) for n in levels[P:]))


    def test_invalid_requests(self):

        with self.assertRaises(ValueError):
            synth.synth_generate(0, 0, 'signature', 'high', self.tmp)
        with self.assertRaises(ValueError):
            synth.synth_generate(0, 2, 'face', 'high', self.tmp)
        with self.assertRaises(ValueError):
            synth.synth_generate(0, 2, 'signature', 'high', self.tmp, samples=2, training_count=3)
