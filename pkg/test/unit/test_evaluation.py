"""Unit tests for the evaluation module"""

import json
import os
import shutil
import tempfile
from unittest import TestCase
import numpy as np
from main import classifiers
from main import dataset
from main import evaluation
from main import imaging
from main import parsers
from main import synth



def naive_silhouette(values, labels):

    values = [float(v) for v in values]
    total = 0.0
    for i, v in enumerate(values):
        own = [abs(v - w) for j, w in enumerate(values) if labels[j] == labels[i] and j != i]
        if not own:
            continue
        a = sum(own) / len(own)
        b = min(
            np.mean([abs(v - w) for j, w in enumerate(values) if labels[j] == c])
            for c in set(labels) if c != labels[i]
        )
        if max(a, b) > 0:
            total += (b - a) / max(a, b)
    return total / len(values)


def grid_config(**overrides):

    values = {'CLASSIFIER': ','.join(classifiers.CLASSIFIER_IDS), 'D1': '128', 'B': '6', 'MOMENT': 'C'}
    values.update(overrides)
    return parsers.read_config_file(None, values)


def rewrite_manifest(fn, change):

    with open(fn) as f:
        doc = json.load(f)
    change(doc)
    with open(fn, 'w') as f:
        json.dump(doc, f)


class TestSilhouette(TestCase):


    def test_separated_clusters(self):

        values = [0.0, 0.1, 0.2, 10.0, 10.1, 10.2]
        self.assertGreater(evaluation.silhouette_score(values, [1, 1, 1, 2, 2, 2]), 0.9)


    def test_identical_points(self):

        self.assertLessEqual(evaluation.silhouette_score([1.0, 1.0, 1.0, 1.0], [1, 1, 2, 2]), 0)


    def test_textbook_oracle(self):

        rng = np.random.RandomState(0)
        for _ in range(50):
            values = rng.random_sample(9)
            labels = list(rng.randint(1, 4, size=9))
            if len(set(labels)) < 2:
                continue
            self.assertAlmostEqual(evaluation.silhouette_score(values, labels), naive_silhouette(values, labels), places=12)


    def test_single_cluster(self):

        with self.assertRaises(ValueError):
            evaluation.silhouette_score([1.0, 2.0, 3.0], [1, 1, 1])


class TestResults(TestCase):


    def test_rates(self):

        s = evaluation.SubjectResult('s1', [1, 2], [0.5, 0.6], 4, 1, 10, 0)
        self.assertEqual((s.frr, s.far), (25, 0))
        s = evaluation.SubjectResult('s2', [1, 2], [0.5, 0.6], 2, 0, 0, 0)
        self.assertIsNone(s.far)

        run = evaluation.RunResult('avgmax', 128, 2, 'C', [
            evaluation.SubjectResult('s1', [1, 2], [0.5], 4, 1, 10, 0),
            evaluation.SubjectResult('s2', [1, 2], [0.5], 4, 0, 10, 5),
            evaluation.SubjectResult('s3', [1, 2], [0.5], 4, 0, 0, 0)
        ])
        self.assertEqual(run.frr, 25 / 3)
        self.assertEqual(run.far, 25)
        self.assertEqual((run.zero_frr, run.zero_far), (2, 1))
        self.assertIsNone(run.silhouette)


    def test_report_document_round_trip(self):

        run = evaluation.RunResult('knn', 64, 8, 'A', [
            evaluation.SubjectResult('s1', list(range(1, 9)), [0.25, 0.5], 2, 1, 4, 1, 0.75)
        ], ['s2'], ['subject s2: skipped'])
        report = evaluation.EvalReport('iris', 'CASIA', 3, 2, {'seed': 1}, [run])

        restored = evaluation.EvalReport.from_dict(json.loads(json.dumps(report.to_dict())))
        self.assertEqual(restored, report)
        self.assertNotIn('wall_clock', report.to_dict())

        with self.assertRaises(ValueError):
            evaluation.EvalReport.from_dict({'format': 'mvqc-template'})


class TestSignatureProtocol(TestCase):


    @classmethod
    def setUpClass(cls):

        cls.tmp = tempfile.mkdtemp()
        cls.manifest = synth.synth_generate(42, 20, 'signature', 'high', os.path.join(cls.tmp, 'corpus'))


    @classmethod
    def tearDownClass(cls):

        shutil.rmtree(cls.tmp)


    def test_pinned_high_separation_run(self):

        ds = dataset.load_dataset(self.manifest)
        report = evaluation.run_experiment(ds, grid_config())

        self.assertEqual(report.subject_count, 20)
        self.assertEqual([r.classifier for r in report.runs], list(classifiers.CLASSIFIER_IDS))
        for run in report.runs:
            self.assertEqual(len(run.subjects), 20, run.classifier)
            self.assertEqual(run.frr, 0, run.classifier)
            self.assertEqual(run.far, 0, run.classifier)
            self.assertEqual((run.zero_frr, run.zero_far), (20, 20))
            self.assertEqual(run.skipped, [])

            for s in run.subjects:
                self.assertEqual(s.genuine_tested, 2)
                self.assertEqual(s.imposter_tested, 38)
                self.assertEqual(len(set(s.H)), 3)
                self.assertEqual(s.H, sorted(s.H))


    def test_template_is_the_stable_block_set(self):

        with open(self.manifest) as f:
            doc = json.load(f)
        stable = dict((s['id'], s['stable_blocks']) for s in doc['subjects'])

        ds = dataset.load_dataset(self.manifest)
        report = evaluation.run_experiment(ds, grid_config(CLASSIFIER='avgmax', TILE_ORDER='raster'))
        for s in report.runs[0].subjects:
            self.assertEqual(s.indices, stable[s.subject_id])


    def test_thread_count_does_not_change_the_report(self):

        ds = dataset.load_dataset(self.manifest)
        single = evaluation.run_experiment(ds, grid_config(CLASSIFIER='avgmax,knn,fuzzy-kmeans', THREADS='1'))
        pooled = evaluation.run_experiment(dataset.load_dataset(self.manifest), grid_config(CLASSIFIER='avgmax,knn,fuzzy-kmeans', THREADS='4'))
        self.assertEqual(json.dumps(single.to_dict()), json.dumps(pooled.to_dict()))


    def test_kmeans_metrics_agree(self):

        ds = dataset.load_dataset(self.manifest)
        report = evaluation.run_experiment(ds, grid_config(CLASSIFIER='kmeans-euclidean,kmeans-cityblock'))
        euclidean, cityblock = report.runs
        for a, b in zip(euclidean.subjects, cityblock.subjects):
            self.assertEqual(
                (a.genuine_rejected, a.imposter_accepted, a.indices),
                (b.genuine_rejected, b.imposter_accepted, b.indices)
            )


    def test_imposter_cap(self):

        ds = dataset.load_dataset(self.manifest)
        subject = ds.subjects['s001']
        self.assertEqual(len(evaluation.imposter_trials(ds, subject)), 38)

        # The cap applies to cross-subject trials drawn when the manifest lists none
        ds.subjects['s001'] = subject._replace(imposter=[])
        self.assertEqual(len(evaluation.imposter_trials(ds, ds.subjects['s001'])), 38)
        self.assertEqual(len(evaluation.imposter_trials(ds, ds.subjects['s001'], cap=5)), 5)


    def test_record_timing(self):

        ds = dataset.load_dataset(self.manifest)
        self.assertIsNone(evaluation.run_experiment(ds, grid_config(CLASSIFIER='avg')).wall_clock)
        report = evaluation.run_experiment(ds, grid_config(CLASSIFIER='avg', RECORD_TIMING='true'))
        self.assertGreaterEqual(report.wall_clock, 0)
        self.assertNotIn('threads', report.config)


class TestProtocolEdgeCases(TestCase):


    def setUp(self):

        self.tmp = tempfile.mkdtemp()
        self.manifest = synth.synth_generate(7, 3, 'signature', 'high', os.path.join(self.tmp, 'corpus'))


    def tearDown(self):

        shutil.rmtree(self.tmp)


    def test_genuine_copies_as_imposters(self):

        def copies(doc):
            for s in doc['subjects']:
                s['imposter'] = s['genuine'][3:]

        rewrite_manifest(self.manifest, copies)
        report = evaluation.run_experiment(dataset.load_dataset(self.manifest), grid_config(CLASSIFIER='avg,avgmax'))
        for run in report.runs:
            self.assertEqual(run.far, 100)
            self.assertEqual(run.frr, 0)


    def test_single_subject_has_no_imposters(self):

        manifest = synth.synth_generate(3, 1, 'signature', 'high', os.path.join(self.tmp, 'single'))
        report = evaluation.run_experiment(dataset.load_dataset(manifest), grid_config(CLASSIFIER='avgmax'))
        run = report.runs[0]
        self.assertEqual(run.frr, 0)
        self.assertIsNone(run.far)
        self.assertEqual(run.subjects[0].imposter_tested, 0)


    def test_subject_without_test_samples_is_skipped(self):

        rewrite_manifest(self.manifest, lambda doc: doc['subjects'][1].update(genuine=doc['subjects'][1]['genuine'][:3]))
        report = evaluation.run_experiment(dataset.load_dataset(self.manifest), grid_config(CLASSIFIER='avgmax'))
        run = report.runs[0]
        self.assertEqual(run.skipped, ['s002'])
        self.assertEqual([s.subject_id for s in run.subjects], ['s001', 's003'])
        self.assertEqual(len(run.warnings), 1)


    def test_failed_test_sample_counts_as_rejection(self):

        with open(self.manifest) as f:
            fn = os.path.join(os.path.dirname(self.manifest), json.load(f)['subjects'][0]['genuine'][4])
        imaging.write_pgm(fn, np.full((100, 100), 255, dtype=np.uint8))

        report = evaluation.run_experiment(dataset.load_dataset(self.manifest), grid_config(CLASSIFIER='avgmax'))
        s001 = report.runs[0].subjects[0]
        self.assertEqual((s001.genuine_tested, s001.genuine_rejected), (2, 1))
        self.assertTrue(any('blank signature' in w for w in report.runs[0].warnings))


    def test_invalid_grid_point(self):

        with self.assertRaises(ValueError):
            evaluation.run_experiment(dataset.load_dataset(self.manifest), grid_config(B='17'))


class TestIrisProtocol(TestCase):


    def test_high_separation_iris(self):

        tmp = tempfile.mkdtemp()
        try:
            manifest = synth.synth_generate(5, 4, 'iris', 'high', os.path.join(tmp, 'corpus'))
            report = evaluation.run_experiment(dataset.load_dataset(manifest), grid_config(CLASSIFIER='avgmax,knn'))
        finally:
            shutil.rmtree(tmp)

        self.assertEqual(report.config['offset_1'], 80)
        self.assertEqual(report.config['offset_2'], 160)
        for run in report.runs:
            self.assertEqual((run.frr, run.far), (0, 0))
