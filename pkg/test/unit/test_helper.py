"""Unit tests for the helper module"""

from unittest import TestCase
import mock
import numpy as np
from main import helper
from main import iris
from main import parsers



def point(**overrides):

    return next(parsers.expand_grid(parsers.read_config_file(None, overrides)))


class TestHelper(TestCase):


    def test_window_for_config(self):

        self.assertIsNone(helper.window_for_config('signature', None, point()))
        self.assertEqual(helper.window_for_config('iris', 'ICE', point()), iris.WindowSpec(6, 12))
        self.assertEqual(helper.window_for_config('iris', 'ICE', point(OFFSET_1='3', OFFSET_2='5')), iris.WindowSpec(3, 5))


    def test_mass_for(self):

        self.assertEqual(helper.mass_for('signature', point(MASS='gray')), 'binary')
        self.assertEqual(helper.mass_for('iris', point(MASS='gray')), 'gray')
        self.assertEqual(helper.mass_for('iris', point(MASS='binary')), 'binary')


    def test_preprocessing_params(self):

        params = helper.preprocessing_params('iris', 'CASIA', point(SWAP_AXES='false'))
        self.assertEqual(params, {
            'modality': 'iris',
            'database': 'CASIA',
            'offset_1': 20,
            'offset_2': 40,
            'swap_axes': False,
            'mass': 'gray'
        })

        params = helper.preprocessing_params('signature', None, point())
        self.assertIsNone(params['offset_1'])
        self.assertEqual(params['mass'], 'binary')


    def test_preprocess_sample_dispatch(self):

        img = np.zeros((10, 10), dtype=np.uint8)
        with mock.patch('main.signature.preprocess_signature', return_value='sig') as sig:
            self.assertEqual(helper.preprocess_sample(img, 'signature'), 'sig')
            sig.assert_called_once_with(img)

        w = iris.WindowSpec(1, 2)
        with mock.patch('main.iris.extract_pif', return_value='pif') as pif:
            self.assertEqual(helper.preprocess_sample(img, 'iris', w, False), 'pif')
            pif.assert_called_once_with(img, w, False)

        with self.assertRaises(ValueError):
            helper.preprocess_sample(img, 'face')


    def test_messages(self):

        with mock.patch('sys.stderr') as err:
            helper.warning('subject s1 skipped')
            err.write.assert_called_once_with('Warning: subject s1 skipped\n')

        with mock.patch('sys.stderr') as err:
            helper.error('no subjects')
            err.write.assert_called_once_with('Error: no subjects\n')


    def test_progress(self):

        with mock.patch('sys.stdout') as out:
            helper.print_progress('Evaluating subjects', 1, 3)
            out.write.assert_called_once_with('\rEvaluating subjects ... 33.3%')

        with mock.patch('sys.stdout') as out:
            helper.print_progress('Evaluating subjects', 0, 0)
            out.write.assert_called_once_with('\rEvaluating subjects ... 100.0%')
