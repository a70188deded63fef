#!/usr/bin/env python

"""
Encoding of reports and module results as JSON, NDJSON, CSV and coloured text
"""

# Standard imports
from importlib import resources
import json

# Third party imports
from termcolor import colored
import jsonschema
import pandas as pd

SCHEMA_VERSION = '1.0'
SCHEMA_FILE = 'report.schema.json'


def encode_int(value):
    """
    Integers are written as decimal strings to survive JSON number limits
    """
    return None if value is None else str(value)


def encode_quadint(alpha):
    """
    :param alpha: type QuadInt or None
    :return: dict with the doubled coordinates and a readable rendering
    """
    if alpha is None:
        return None
    return {
        'x': encode_int(alpha.x),
        'y': encode_int(alpha.y),
        'text': str(alpha)
    }


def encode_form(form):
    return [encode_int(form.a), encode_int(form.b), encode_int(form.c)]


def encode_label(class_label):
    return {
        'form': encode_form(class_label.form),
        'strictness': class_label.strictness
    }


def encode_rep(rep):
    return {'a': encode_int(rep.a), 'b': encode_int(rep.b)}


def _branch_a_dict(details):
    if details is None:
        return None
    return {
        'principal_index': details.principal_index,
        'alpha': encode_quadint(details.alpha),
        'eta': encode_quadint(details.eta),
        'eta_norm': details.eta_norm,
        'eta_exponent': encode_int(details.eta_exponent),
        'suitable_alpha': encode_quadint(details.suitable_alpha)
    }


def _branch_b_dict(details):
    if details is None:
        return None
    relation = None
    if details.relation is not None:
        relation = {
            'e': list(details.relation.e),
            'alpha': encode_quadint(details.relation.alpha)
        }
    return {
        'pairs': [list(pair) for pair in details.pairs],
        'relation': relation,
        'relation_exponent': encode_int(details.relation_exponent),
        'unit_alpha': encode_quadint(details.unit_alpha)
    }


def report_to_dict(report, timings=False):
    """
    :param report: type verify.Report
    :param timings: type bool: Include the elapsed time, which breaks
        byte-reproducibility
    :return: dict matching the published report schema
    """
    data = {
        'schema_version': SCHEMA_VERSION,
        'm': encode_int(report.m),
        'primes': [encode_int(p) for p in report.primes],
        't': report.t,
        'unit': {
            'epsilon': encode_quadint(report.epsilon),
            'norm': report.unit_norm
        },
        'reps': [encode_rep(rep) for rep in report.reps],
        'theorem_strictness': report.theorem_strictness,
        'class_numbers': dict(sorted(report.class_numbers.items())),
        'ideal_classes': {
            mode: [encode_label(class_label) for class_label in labels]
            for mode, labels in sorted(report.ideal_classes.items())
        },
        'ramified_classes': {
            mode: [
                {'e': list(e), 'class': encode_label(class_label)}
                for e, class_label in entries
            ]
            for mode, entries in sorted(report.ramified_classes.items())
        },
        'two_torsion': [encode_label(item) for item in report.two_torsion],
        'ambiguous': [encode_label(item) for item in report.ambiguous],
        'torsion_counts': {
            mode: dict(sorted(counts.items()))
            for mode, counts in sorted(report.torsion_counts.items())
        },
        'index': report.index,
        'branch': report.branch,
        'branch_a': _branch_a_dict(report.branch_a),
        'branch_b': _branch_b_dict(report.branch_b),
        'checks': [
            {'name': check.name, 'passed': check.passed,
             'detail': check.detail}
            for check in report.checks
        ],
        'passed': report.passed,
        'error': report.error
    }
    if timings:
        data['elapsed'] = report.elapsed
    return data


def to_json(data, indent=2):
    return json.dumps(data, indent=indent, sort_keys=False)


def to_ndjson_line(data):
    return json.dumps(data, separators=(',', ':'))


def load_schema():
    """
    :return: dict of the report schema shipped with the package
    """
    schema_text = resources.files('quad_torsion').joinpath(
        'schemas', SCHEMA_FILE
    ).read_text(encoding='utf-8')
    return json.loads(schema_text)


def validate_report(data):
    """
    Validate a serialized report against the published schema
    :param data: type dict: Output of report_to_dict
    """
    jsonschema.validate(instance=data, schema=load_schema())


def report_row(report, timings=False):
    """
    Flatten a report into one CSV row
    :return: dict of column: value
    """
    row = {
        'schema_version': SCHEMA_VERSION,
        'm': encode_int(report.m),
        't': report.t,
        'primes': '*'.join(str(p) for p in report.primes),
        'epsilon': str(report.epsilon) if report.epsilon else '',
        'unit_norm': report.unit_norm,
        'branch': report.branch or '',
        'class_number_narrow': report.class_numbers.get('narrow', ''),
        'class_number_wide': report.class_numbers.get('wide', ''),
        'two_torsion': len(report.two_torsion),
        'ambiguous': len(report.ambiguous),
        'checks': len(report.checks),
        'failed_checks': len(report.failures),
        'passed': report.passed,
        'error': report.error or ''
    }
    if timings:
        row['elapsed'] = report.elapsed
    return row


def rows_to_csv(rows, header=True):
    """
    :param rows: type list of dict: Rows with identical keys
    :param header: type bool: Write the column names
    :return: str of CSV text without a trailing newline
    """
    return pd.DataFrame(rows).to_csv(
        index=False, header=header, lineterminator='\n'
    ).rstrip('\n')


def summary_to_dict(summary):
    return {
        'schema_version': SCHEMA_VERSION,
        'summary': {
            'm_min': encode_int(summary.m_min),
            'm_max': encode_int(summary.m_max),
            'reports': summary.reports,
            'branch_a': summary.branch_a,
            'branch_b': summary.branch_b,
            'failed_reports': summary.failed_reports,
            'failed_checks': summary.failed_checks,
            'errors': summary.errors,
            'failing_m': [encode_int(m) for m in summary.failing_m],
            'passed': summary.passed
        }
    }


def summary_to_csv(summary):
    """
    Summary line closing a CSV scan. It is a comment, so readers such as
    pandas.read_csv(..., comment='#') skip it
    :return: str
    """
    return f'# summary {to_ndjson_line(summary_to_dict(summary)["summary"])}'


def _status(passed):
    if passed:
        return colored('PASS', 'green', attrs=['bold'])
    return colored('FAIL', 'red', attrs=['bold'])


def report_to_text(report, timings=False):
    """
    Human-readable rendering of a report
    :return: str
    """
    header = colored(f'm = {report.m}', 'blue', attrs=['bold'])
    if report.error is not None:
        return f'{header}\n  {_status(False)} {report.error}'
    lines = [
        f'{header} = {" * ".join(str(p) for p in report.primes)} '
        f'(t = {report.t})',
        f'  epsilon = {report.epsilon}, norm {report.unit_norm:+d}',
        '  representations: ' + ', '.join(
            f'({rep.a}, {rep.b})' for rep in report.reps
        ),
        '  class numbers: ' + ', '.join(
            f'{mode} {number}'
            for mode, number in sorted(report.class_numbers.items())
        ),
    ]
    for mode, labels in sorted(report.ideal_classes.items()):
        for index, (rep, class_label) in enumerate(zip(report.reps, labels)):
            lines.append(
                f'  {mode} class of a{index + 1} = ({rep.a}, 2*{rep.b} + '
                f'sqrt({report.m})): {class_label.form}'
            )
    lines.append(
        f'  two-torsion: {len(report.two_torsion)} classes, ambiguous: '
        f'{len(report.ambiguous)} classes, index {report.index}'
    )
    for mode, counts in sorted(report.torsion_counts.items()):
        lines.append(
            f'  {mode} two-torsion: {counts["two_torsion"]} classes, '
            f'ambiguous: {counts["ambiguous"]} classes'
        )
    lines.append(f'  branch {report.branch}')
    if report.branch_a is not None:
        details = report.branch_a
        lines.append(
            f'  principal ideal a{details.principal_index} = '
            f'({details.alpha}), eta = {details.eta}, norm {details.eta_norm}'
            f', eta = epsilon^{details.eta_exponent}'
        )
    if report.branch_b is not None:
        details = report.branch_b
        lines.append('  pairs: ' + ', '.join(
            '{' + ', '.join(f'a{index}' for index in pair) + '}'
            for pair in details.pairs
        ))
        if details.relation is not None:
            lines.append(
                f'  ramified relation: b{details.relation.e} = '
                f'({details.relation.alpha}), unit exponent '
                f'{details.relation_exponent}'
            )
    for check in report.checks:
        detail = f' ({check.detail})' if check.detail else ''
        lines.append(f'  {_status(check.passed)} {check.name}{detail}')
    if timings and report.elapsed is not None:
        lines.append(f'  elapsed {report.elapsed:.3f} s')
    return '\n'.join(lines)


def summary_to_text(summary):
    return (
        f'{_status(summary.passed)} scanned {summary.reports} values of m in '
        f'[{summary.m_min}, {summary.m_max}]: {summary.branch_a} with '
        f'N(epsilon) = -1, {summary.branch_b} with N(epsilon) = +1, '
        f'{summary.failed_reports} failing, {summary.errors} errors'
    )
