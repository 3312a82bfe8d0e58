from __future__ import division
from collections import OrderedDict
import csv
import json
from . import classifiers
from . import evaluation


FORMATS = ('csv', 'json', 'text-table')

CSV_HEADER = ['classifier', 'b', 'd1', 'kind', 'FRR%', 'FAR%', 'zeroFRR-count', 'zeroFAR-count']


def _pct(x):

    return 'NA' if x is None else '{:.2f}'.format(x)


def csv_rows(report):

    return [
        [r.classifier, r.b, r.d1, r.kind, _pct(r.frr), _pct(r.far), r.zero_frr, r.zero_far]
        for r in report.runs
    ]


def text_tables(report):
    """One table per (moment kind, rate): classifiers as rows, (d1, b) as columns."""

    kinds = list(OrderedDict.fromkeys(r.kind for r in report.runs))
    columns = list(OrderedDict.fromkeys((r.d1, r.b) for r in report.runs))
    present = set(r.classifier for r in report.runs)
    rows = [c for c in classifiers.CLASSIFIER_IDS if c in present]

    by_key = dict(((r.kind, r.classifier, r.d1, r.b), r) for r in report.runs)

    lines = []
    for kind in kinds:
        for rate in ('FRR', 'FAR'):

            header = ['{} (%), Moment_{}'.format(rate, kind)] + ['d1={} b={}'.format(d1, b) for d1, b in columns]
            body = []
            for c in rows:
                cells = []
                for d1, b in columns:
                    r = by_key.get((kind, c, d1, b))
                    cells.append('-' if r is None else _pct(r.frr if rate == 'FRR' else r.far))
                body.append([c] + cells)

            widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
            lines.append('  '.join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
            lines.append('  '.join('-' * w for w in widths))
            for row in body:
                lines.append('  '.join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
            lines.append('')

    return '\n'.join(lines)


def report_emit(report, fmt, fn):

    if fmt not in FORMATS:
        raise ValueError('unknown report format: {}'.format(fmt))

    try:
        with open(fn, 'w', newline='') as out:

            if fmt == 'json':
                json.dump(report.to_dict(), out, indent=2)
                out.write('\n')

            elif fmt == 'csv':
                writer = csv.writer(out, lineterminator='\n')
                writer.writerow(CSV_HEADER)
                writer.writerows(csv_rows(report))

            else:
                out.write(text_tables(report))

    except (IOError, OSError) as err:
        raise IOError('cannot write report {}: {}'.format(fn, err))


def read_report(fn):

    with open(fn) as f:
        try:
            doc = json.load(f)
        except ValueError as err:
            raise ValueError('malformed report {}: {}'.format(fn, err))

    return evaluation.EvalReport.from_dict(doc)
