from __future__ import division
from . import classifiers
from . import moments
from . import quadtree


D1_VALUES = (64, 128, 256)

MODALITIES = ('iris', 'signature')


class ConfigChecks(object):


    def __init__(self, detailed):

        self.detailed = detailed
        self.problems = []


    def apply_checks(self, config, modality=None):

        self.problems = []

        try:

            # Check component side
            self.check_d1(config)

            # Check component budget against L
            self.check_b(config)

            # Check moment kind
            self.check_moment(config)

            # Check classifier id
            self.check_classifier(config)

            # Check tile order and mass mode
            self.check_tile_order(config)
            self.check_mass(config)

            # Check iris window offsets
            self.check_offsets(config)

            # Check fuzzy parameters
            self.check_fuzzy_parameters(config)

            # Check worker and imposter counts
            self.check_counts(config)

            # Check dataset modality
            if modality is not None:
                self.check_modality(modality)

        except ValueError as err:

            return [str(err)]

        return list(self.problems)


    # Checks:


    def check_d1(self, config):

        self._apply(
            config['D1'] not in D1_VALUES,
            'unsupported d1 ({}); expected one of {}'.format(config['D1'], ', '.join(map(str, D1_VALUES)))
        )


    def check_b(self, config):

        L = (quadtree.IMAGE_SIZE // config['D1']) ** 2 if config['D1'] in D1_VALUES else None
        self._apply(
            config['B'] < 1,
            'b must be positive ({})'.format(config['B'])
        )
        self._apply(
            L is not None and config['B'] > L,
            'b ({}) exceeds the number of components L={} at d1={}'.format(config['B'], L, config['D1'])
        )


    def check_moment(self, config):

        self._apply(
            str(config['MOMENT']).upper() not in moments.MOMENT_KINDS,
            'unknown moment kind ({})'.format(config['MOMENT'])
        )


    def check_classifier(self, config):

        self._apply(
            config['CLASSIFIER'] not in classifiers.CLASSIFIER_IDS,
            'unknown classifier ({})'.format(config['CLASSIFIER'])
        )


    def check_tile_order(self, config):

        self._apply(
            config['TILE_ORDER'] not in quadtree.TILE_ORDERS,
            'unknown tile order ({})'.format(config['TILE_ORDER'])
        )


    def check_mass(self, config):

        self._apply(
            config['MASS'] not in moments.MASS_MODES,
            'unknown mass mode ({})'.format(config['MASS'])
        )


    def check_offsets(self, config):

        for key in ('OFFSET_1', 'OFFSET_2'):
            self._apply(
                config[key] is not None and config[key] < 0,
                'negative window offset {} ({})'.format(key, config[key])
            )
        self._apply(
            (config['OFFSET_1'] is None) != (config['OFFSET_2'] is None),
            'OFFSET_1 and OFFSET_2 must be given together'
        )


    def check_fuzzy_parameters(self, config):

        self._apply(
            config['FUZZIFIER'] <= 1,
            'fuzzifier must exceed 1 ({})'.format(config['FUZZIFIER'])
        )
        self._apply(
            config['EPSILON'] <= 0,
            'epsilon must be positive ({})'.format(config['EPSILON'])
        )
        self._apply(
            config['MAX_ITERATIONS'] < 1,
            'max_iterations must be positive ({})'.format(config['MAX_ITERATIONS'])
        )


    def check_counts(self, config):

        self._apply(
            config['THREADS'] < 1,
            'threads must be positive ({})'.format(config['THREADS'])
        )
        self._apply(
            config['IMPOSTER_CAP'] < 0,
            'negative imposter_cap ({})'.format(config['IMPOSTER_CAP'])
        )
        self._apply(
            config['TRAINING_IMPOSTERS'] < 0,
            'negative training_imposters ({})'.format(config['TRAINING_IMPOSTERS'])
        )


    def check_modality(self, modality):

        self._apply(
            modality not in MODALITIES,
            'unknown modality ({})'.format(modality)
        )


    # Helper function:

    def _apply(self, condition, txt):

        if condition:
            if self.detailed:
                self.problems.append(txt)
            else:
                raise ValueError(txt)


def validate(config, modality=None):
    """Fail-fast check of one single-valued configuration."""

    problems = ConfigChecks(True).apply_checks(config, modality)
    if problems:
        raise ValueError('; '.join(problems))
