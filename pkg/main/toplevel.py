from __future__ import division
from .version import __version__
import datetime
import os
from . import classifiers
from . import checks
from . import dataset
from . import evaluation
from . import helper
from . import imaging
from . import iris
from . import mvqc
from . import parsers
from . import report
from . import synth


def read_config(options):

    overrides = dict((key, getattr(options, key.lower(), None)) for key in parsers.CONFIG_DEFAULTS)
    return parsers.read_config_file(options.config, overrides)


def _require(options, *names):

    for name in names:
        if getattr(options, name, None) in (None, ''):
            raise ValueError('missing required option --{}'.format(name))


def run_enroll(options):

    _require(options, 'manifest', 'output')

    # Start time
    start_time = datetime.datetime.now()

    # Print welcome message and information
    helper.welcome(__version__, 'enroll')

    # Read configuration file
    helper.step('Reading configuration')
    config = read_config(options)
    points = list(parsers.expand_grid(config))
    if len(points) != 1:
        raise ValueError('enroll needs a single configuration, got {} grid points'.format(len(points)))
    point = points[0]
    helper.done()

    # Read input data
    helper.step('Reading manifest')
    ds = dataset.load_dataset(options.manifest, config['EAGER'])
    checks.validate(point, ds.modality)
    helper.done()

    window = helper.window_for_config(ds.modality, ds.database, point)
    bank = dataset.FeatureBank(ds, window, point['SWAP_AXES'])
    mass = helper.mass_for(ds.modality, point)
    preprocessing = helper.preprocessing_params(ds.modality, ds.database, point)
    P = ds.training_count

    if not os.path.isdir(options.output):
        os.makedirs(options.output)

    written = 0
    helper.init_progress('Enrolling subjects')
    for counter, subject in enumerate(ds.subjects.values(), 1):

        try:
            tm = [bank.moments(fn, point['D1'], point['MOMENT'], point['TILE_ORDER'], mass) for fn in subject.genuine[:P]]
        except ValueError as err:
            helper.warning('subject {}: training sample failed; skipped: {}'.format(subject.id, err))
            helper.print_progress('Enrolling subjects', counter, len(ds))
            continue

        template = mvqc.enroll_matrix(subject.id, tm, point['MOMENT'], point['D1'], point['B'], point['TILE_ORDER'], mass)

        # Optional imposter summations for the clustering fit
        imposters = evaluation.imposter_trials(ds, subject, point['IMPOSTER_CAP'])[:point['TRAINING_IMPOSTERS']]
        train_values = []
        for fn in imposters:
            try:
                train_values.append(mvqc.moment_summation(bank.moments(fn, template.d1, template.kind, template.tile_order, mass), template))
            except ValueError as err:
                helper.warning('subject {}: training imposter ignored: {}'.format(subject.id, err))

        verifier = classifiers.make_verifier(point['CLASSIFIER'], point['FUZZIFIER'], point['EPSILON'], point['MAX_ITERATIONS'])
        try:
            verifier.fit(template.features, train_values)
        except RuntimeError as err:
            helper.warning('subject {}: {} fit failed; skipped: {}'.format(subject.id, point['CLASSIFIER'], err))
            helper.print_progress('Enrolling subjects', counter, len(ds))
            continue

        fn = os.path.join(options.output, '{}.json'.format(subject.id))
        mvqc.save_template(fn, template, verifier.to_dict(), preprocessing)
        written += 1

        helper.print_progress('Enrolling subjects', counter, len(ds))

    helper.finalize_progress('Enrolling subjects')

    # Runtime
    run_time = str(datetime.datetime.now() - start_time)

    # Print goodbye message and information
    helper.goodbye([('Templates written ({})'.format(written), options.output)], run_time)
    return 0


def run_verify(options):

    _require(options, 'template', 'sample')

    template, model, prep = mvqc.load_template(options.template)
    verifier = classifiers.verifier_from_dict(model)

    window = None
    if prep.get('modality') == 'iris':
        window = iris.WindowSpec(prep['offset_1'], prep['offset_2'])

    img = helper.preprocess_sample(imaging.read_image(options.sample), prep.get('modality'), window, prep.get('swap_axes', True))
    accept, score = verifier.decide(mvqc.image_summation(img, template))

    print('{}\t{!r}'.format('accept' if accept else 'reject', float(score)))
    return 0 if accept else 1


def run_evaluate(options):

    _require(options, 'manifest', 'output')

    # Start time
    start_time = datetime.datetime.now()

    # Print welcome message and information
    helper.welcome(__version__, 'evaluate')

    # Read configuration file
    helper.step('Reading configuration')
    config = read_config(options)
    helper.done()

    # Read input data
    helper.step('Reading manifest')
    ds = dataset.load_dataset(options.manifest, config['EAGER'])
    helper.done()

    total = len(list(parsers.expand_grid(config))) * len(ds)
    counter = [0]

    def progress():
        counter[0] += 1
        helper.print_progress('Evaluating subjects', counter[0], total)

    helper.init_progress('Evaluating subjects')
    result = evaluation.run_experiment(ds, config, progress)
    helper.finalize_progress('Evaluating subjects')

    for run in result.runs:
        for w in run.warnings:
            helper.warning('{} d1={} b={} {}: {}'.format(run.classifier, run.d1, run.b, run.kind, w))

    # Write report
    report.report_emit(result, options.format, options.output)

    # Runtime
    run_time = str(datetime.datetime.now() - start_time)

    # Print goodbye message and information
    helper.goodbye([('Report ({})'.format(options.format), options.output)], run_time)
    return 0


def run_synth(options):

    _require(options, 'output')

    # Start time
    start_time = datetime.datetime.now()

    # Print welcome message and information
    helper.welcome(__version__, 'synth')

    helper.step('Generating {} {} subjects'.format(options.subjects, options.modality))
    fn = synth.synth_generate(
        options.seed,
        options.subjects,
        options.modality,
        options.separation,
        options.output,
        options.samples,
        options.training_count
    )
    helper.done()

    # Runtime
    run_time = str(datetime.datetime.now() - start_time)

    # Print goodbye message and information
    helper.goodbye([('Manifest', fn)], run_time)
    return 0


def run_report(options):

    _require(options, 'input', 'output')

    report.report_emit(report.read_report(options.input), options.format, options.output)
    return 0


RUNNERS = {
    'enroll': run_enroll,
    'verify': run_verify,
    'evaluate': run_evaluate,
    'synth': run_synth,
    'report': run_report
}
