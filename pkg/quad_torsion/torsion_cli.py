#!/usr/bin/env python

"""
Explore the order-2 ideal classes of real quadratic fields Q(sqrt(m)) with m a
product of primes congruent to 1 mod 4
"""

# Standard imports
from argparse import (
    ArgumentParser,
    RawTextHelpFormatter
)
from functools import wraps
import logging
import os

# Third party imports
from termcolor import colored
import pandas as pd

# Local imports
from quad_torsion.arith import (
    set_seed,
    validated_factorization
)
from quad_torsion.forms import (
    ambiguous_classes,
    class_group,
    two_torsion_classes
)
from quad_torsion.ideals import (
    generator,
    ideal_a,
    label,
    ramified_prime,
    to_form,
    verify_square_principal
)
from quad_torsion.methods import (
    InconsistencyError,
    InvalidInputError,
    STRICTNESS_CHOICES,
    RunConfig,
    create_parent_parser,
    prepare_output_file,
    setup_arguments,
    write_output
)
from quad_torsion.quadfield import (
    continued_fraction_cycle,
    fundamental_unit
)
from quad_torsion.quartic import (
    character_discriminant,
    disc_check,
    distinct_extensions_check,
    enumerate_quartic_characters,
    is_irreducible,
    kummer_min_poly,
    min_poly,
    same_field_check
)
from quad_torsion.reps import enumerate_reps
from quad_torsion.serialization import (
    SCHEMA_VERSION,
    encode_form,
    encode_int,
    encode_quadint,
    encode_rep,
    report_row,
    report_to_dict,
    report_to_text,
    rows_to_csv,
    summary_to_csv,
    summary_to_dict,
    summary_to_text,
    to_json,
    to_ndjson_line
)
from quad_torsion.verify import (
    Report,
    ScanFilters,
    ScanSummary,
    classify,
    recorded_strictness,
    scan
)
from quad_torsion.version import __version__


def handle_errors(func):
    """
    Turn invalid input into exit code 2 and internal inconsistencies into exit
    code 3, logging the reason
    """
    @wraps(func)
    def wrapper(args):
        try:
            return func(args)
        except InvalidInputError as exc:
            logging.error('%s', exc)
            raise SystemExit(2) from exc
        except InconsistencyError as exc:
            logging.error('Internal inconsistency: %s', exc)
            raise SystemExit(3) from exc
    return wrapper


def prepare_run(args):
    """
    Build the run configuration, install the seed, and validate the output
    file
    :param args: type ArgumentParser arguments
    :return: config: RunConfig
    :return: output_file: Absolute path of the output file, or empty string
    """
    config = RunConfig.from_arguments(args)
    set_seed(config.seed)
    output_file = prepare_output_file(config.out)
    logging.debug('Run configuration: %s', config.to_dict())
    return config, output_file


def emit(config, output_file, data, rows, text):
    """
    Write a result in the configured format
    :param config: type RunConfig
    :param output_file: type str
    :param data: JSON-serializable object
    :param rows: type list of dict: CSV rows
    :param text: type str: Human-readable rendering
    """
    if config.output_format == 'json':
        write_output(to_json(data), output_file)
    elif config.output_format == 'csv':
        write_output(rows_to_csv(rows), output_file)
    else:
        write_output(text, output_file)


def _title(text):
    return colored(text, 'blue', attrs=['bold'])


@handle_errors
def cmd_reps(args):
    """
    Print the representations m = a^2 + 4b^2
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    f = validated_factorization(args.m)
    reps = enumerate_reps(f)
    logging.info(
        'Found %s representations of %s', len(reps), args.m
    )
    text = [_title(
        f'm = {args.m} = {" * ".join(str(p) for p in f.primes)}'
    )]
    text.extend(
        f'  ({rep.a}, {rep.b}): {args.m} = {rep.a}^2 + 4 * {rep.b}^2'
        for rep in reps
    )
    emit(
        config, output_file,
        data=[encode_rep(rep) for rep in reps],
        rows=[{'m': args.m, 'a': rep.a, 'b': rep.b} for rep in reps],
        text='\n'.join(text)
    )


@handle_errors
def cmd_unit(args):
    """
    Print the fundamental unit and its norm
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    validated_factorization(args.m)
    epsilon, unit_norm = fundamental_unit(args.m)
    period = continued_fraction_cycle(args.m).period
    emit(
        config, output_file,
        data={
            'schema_version': SCHEMA_VERSION,
            'm': encode_int(args.m),
            'epsilon': encode_quadint(epsilon),
            'norm': unit_norm,
            'period': period
        },
        rows=[{
            'm': args.m,
            'x': epsilon.x,
            'y': epsilon.y,
            'epsilon': str(epsilon),
            'norm': unit_norm,
            'period': period
        }],
        text=f'{_title(f"m = {args.m}")}\n  epsilon = {epsilon}, '
             f'norm {unit_norm:+d}, period {period}'
    )


@handle_errors
def cmd_classgroup(args):
    """
    Print every ideal class with its cycle length, marking the two-torsion and
    the ambiguous classes
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    validated_factorization(args.m)
    group = class_group(args.m)
    _, modes = recorded_strictness(config.strictness)
    rows = []
    for mode in modes:
        two_torsion = set(two_torsion_classes(args.m, mode))
        ambiguous = set(ambiguous_classes(args.m, mode))
        principal = group.principal(mode)
        for class_label in group.labels(mode):
            rows.append({
                'strictness': mode,
                'form': class_label.form,
                'cycle_length': group.cycle_length(class_label),
                'principal': class_label == principal,
                'two_torsion': class_label in two_torsion,
                'ambiguous': class_label in ambiguous
            })
    text = [_title(f'm = {args.m}')]
    for mode in modes:
        text.append(f'  {mode} class number {group.class_number(mode)}')
        for row in rows:
            if row['strictness'] != mode:
                continue
            marks = [name for name in ('principal', 'two_torsion', 'ambiguous')
                     if row[name]]
            text.append(
                f'    {row["form"]} cycle length {row["cycle_length"]}'
                + (f' [{", ".join(marks)}]' if marks else '')
            )
    emit(
        config, output_file,
        data={
            'schema_version': SCHEMA_VERSION,
            'm': encode_int(args.m),
            'classes': [
                dict(row, form=encode_form(row['form'])) for row in rows
            ]
        },
        rows=[dict(row, form=str(row['form'])) for row in rows],
        text='\n'.join(text)
    )


@handle_errors
def cmd_ideals(args):
    """
    Print the ideals (a, 2b + sqrt(m)) and the ramified primes with their
    forms, classes and generators
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    f = validated_factorization(args.m)
    _, modes = recorded_strictness(config.strictness)
    entries = []
    for rep in enumerate_reps(f):
        entries.append((f'a({rep.a}, {rep.b})', ideal_a(rep),
                        verify_square_principal(rep)))
    for p in f.primes:
        entries.append((f'p{p}', ramified_prime(args.m, p), True))
    rows = []
    for name, ideal, square_principal in entries:
        row = {
            'name': name,
            'ideal': str(ideal),
            'norm': ideal.norm,
            'form': str(to_form(ideal)),
            'square_principal': square_principal,
            'generator': str(generator(ideal) or '')
        }
        for mode in modes:
            row[f'{mode}_class'] = str(label(ideal, mode).form)
        rows.append(row)
    text = [_title(f'm = {args.m}')]
    for row in rows:
        classes = ', '.join(f'{mode} {row[f"{mode}_class"]}' for mode in modes)
        principal = f', generated by {row["generator"]}' \
            if row['generator'] else ''
        text.append(
            f'  {row["name"]} = {row["ideal"]}, norm {row["norm"]}, form '
            f'{row["form"]}, class {classes}{principal}'
        )
    emit(
        config, output_file,
        data={
            'schema_version': SCHEMA_VERSION,
            'm': encode_int(args.m),
            'ideals': [
                dict(row, norm=encode_int(row['norm'])) for row in rows
            ]
        },
        rows=rows,
        text='\n'.join(text)
    )


@handle_errors
def cmd_quartic(args):
    """
    Print the quartic characters and, for every representation, the minimal
    polynomials of the two field generators with their checks
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    f = validated_factorization(args.m)
    reps = enumerate_reps(f)
    rows = []
    for rep in reps:
        poly = min_poly(args.m, rep)
        kummer = kummer_min_poly(args.m, rep)
        rows.append({
            'a': rep.a,
            'b': rep.b,
            'min_poly': str(poly),
            'irreducible': is_irreducible(poly),
            'discriminant': str(poly.discriminant()),
            'disc_check': disc_check(poly, args.m),
            'kummer_min_poly': str(kummer),
            'same_field': same_field_check(args.m, rep)
        })
    characters = [
        {
            'pair': [str(chi), str(inverse)],
            'discriminant': encode_int(character_discriminant(chi, f.primes))
        }
        for chi, inverse in enumerate_quartic_characters(f.t)
    ]
    distinct = distinct_extensions_check(args.m, reps)
    text = [_title(f'm = {args.m}')]
    text.append(
        f'  {len(characters)} cyclic quartic fields of conductor {args.m}'
    )
    for character in characters:
        text.append(
            f'    characters {" and ".join(character["pair"])}, discriminant '
            f'{character["discriminant"]}'
        )
    for row in rows:
        text.append(
            f'  ({row["a"]}, {row["b"]}): {row["min_poly"]}, irreducible '
            f'{row["irreducible"]}, discriminant m^3 * square '
            f'{row["disc_check"]}, same field as {row["kummer_min_poly"]} '
            f'{row["same_field"]}'
        )
    text.append(f'  representations give distinct fields {distinct}')
    emit(
        config, output_file,
        data={
            'schema_version': SCHEMA_VERSION,
            'm': encode_int(args.m),
            'characters': characters,
            'generators': [
                dict(row, a=encode_int(row['a']), b=encode_int(row['b']))
                for row in rows
            ],
            'distinct_fields': distinct
        },
        rows=rows,
        text='\n'.join(text)
    )


@handle_errors
def cmd_verify(args):
    """
    Classify m and print the full report. Exit with code 1 when a check fails
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    report = classify(
        args.m,
        strictness=config.strictness,
        quartic=True,
        timings=config.timings
    )
    emit(
        config, output_file,
        data=report_to_dict(report, timings=config.timings),
        rows=[report_row(report, timings=config.timings)],
        text=report_to_text(report, timings=config.timings)
    )
    if not report.passed:
        logging.error(
            '%s of %s checks failed for m = %s',
            len(report.failures), len(report.checks), args.m
        )
        raise SystemExit(1)


class TorsionScan:
    """
    Stream the reports of every valid m in a range, followed by a summary.

    Attributes:
        m_min (int): Lower bound of the range.
        m_max (int): Upper bound of the range.
        config (RunConfig): Output and worker options.
        filters (ScanFilters): Restrictions on t and on the unit norm.
        quartic (bool): Whether the quartic checks run for every m.
        output_file (str): Name and path of the output file.
    """

    def main(self):
        """
        Run the scan, writing each report as soon as it arrives
        :return: ScanSummary
        """
        summary = ScanSummary(m_min=self.m_min, m_max=self.m_max)
        reports = scan(
            self.m_min,
            self.m_max,
            filters=self.filters,
            strictness=self.config.strictness,
            jobs=self.config.jobs,
            seed=self.config.seed,
            quartic=self.quartic,
            timings=self.config.timings
        )
        for report in reports:
            try:
                self.write_report(report, first=summary.reports == 0)
            except OSError as exc:
                logging.error(
                    'Could not write the report of m = %s: %s', report.m, exc
                )
                report = Report(
                    m=report.m, error=f'{type(exc).__name__}: {exc}'
                )
            summary.add(report)
        self.write_summary(summary)
        return summary

    def write_report(self, report, first):
        timings = self.config.timings
        if self.config.output_format == 'json':
            write_output(
                to_ndjson_line(report_to_dict(report, timings=timings)),
                self.output_file
            )
        elif self.config.output_format == 'csv':
            write_output(
                rows_to_csv([report_row(report, timings=timings)],
                            header=first),
                self.output_file
            )
        else:
            write_output(
                report_to_text(report, timings=timings), self.output_file
            )

    def write_summary(self, summary):
        if self.config.output_format == 'json':
            write_output(
                to_ndjson_line(summary_to_dict(summary)), self.output_file
            )
        elif self.config.output_format == 'csv':
            write_output(summary_to_csv(summary), self.output_file)
        else:
            write_output(summary_to_text(summary), self.output_file)
        logging.info(
            'Scanned %s values of m: %s with N(epsilon) = -1, %s with '
            'N(epsilon) = +1, %s failing, %s errors',
            summary.reports, summary.branch_a, summary.branch_b,
            summary.failed_reports, summary.errors
        )

    def __init__(self, m_min, m_max, config, output_file=str(), filters=None,
                 quartic=False):
        if m_min > m_max:
            raise InvalidInputError(
                f'The lower bound {m_min} exceeds the upper bound {m_max}'
            )
        self.m_min = m_min
        self.m_max = m_max
        self.config = config
        self.output_file = output_file
        self.filters = filters or ScanFilters()
        self.quartic = quartic


@handle_errors
def cmd_scan(args):
    """
    Run the TorsionScan class. Exit with code 1 when any check failed
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    filters = ScanFilters(
        t_values=tuple(args.t or ()),
        unit_norm=args.unit_norm
    )
    torsion_scan = TorsionScan(
        m_min=args.m_min,
        m_max=args.m_max,
        config=config,
        output_file=output_file,
        filters=filters,
        quartic=args.quartic
    )
    summary = torsion_scan.main()
    if not summary.passed:
        logging.error(
            '%s values of m failed: %s', summary.failed_reports,
            ', '.join(str(m) for m in summary.failing_m)
        )
        raise SystemExit(1)


def read_batch_file(batch_file):
    """
    Read the tab-separated batch file of field parameters with pandas
    :param batch_file: type str: Name and path of the file. One m per line,
        optionally followed by a strictness
    :return: list of (m, strictness or None) tuples
    """
    if not os.path.isfile(batch_file):
        logging.error(
            'Could not locate the supplied batch file %s. Please ensure that '
            'you entered the name and path correctly',
            batch_file
        )
        raise SystemExit(2)
    try:
        batch = pd.read_csv(
            batch_file,
            sep='\t',
            names=['m', 'strictness'],
            comment='#',
            dtype=str,
            keep_default_na=False
        )
    except pd.errors.ParserError as exc:
        logging.error('Pandas error parsing data: %s', exc)
        raise SystemExit(2) from exc
    entries = []
    for _, row in batch.iterrows():
        try:
            m = int(row['m'].strip())
        except ValueError as exc:
            raise InvalidInputError(
                f'Could not read the field parameter {row["m"]} in '
                f'{batch_file}'
            ) from exc
        strictness = row['strictness'].strip() or None
        if strictness is not None and strictness not in STRICTNESS_CHOICES:
            raise InvalidInputError(
                f'Strictness {strictness} for m = {m} must be one of '
                f'{", ".join(STRICTNESS_CHOICES)}'
            )
        entries.append((m, strictness))
    return entries


@handle_errors
def cmd_batch(args):
    """
    Classify every m listed in a batch file. Exit with code 1 when a check
    fails
    :param args: type ArgumentParser arguments
    """
    config, output_file = prepare_run(args)
    entries = read_batch_file(args.batch_file)
    logging.info(
        'Classifying %s values of m from %s', len(entries), args.batch_file
    )
    failing = []
    for index, (m, strictness) in enumerate(entries):
        report = classify(
            m,
            strictness=strictness or config.strictness,
            quartic=args.quartic,
            timings=config.timings
        )
        if config.output_format == 'json':
            line = to_ndjson_line(report_to_dict(report, config.timings))
        elif config.output_format == 'csv':
            line = rows_to_csv(
                [report_row(report, config.timings)], header=index == 0
            )
        else:
            line = report_to_text(report, config.timings)
        write_output(line, output_file)
        if not report.passed:
            failing.append(m)
    if failing:
        logging.error(
            'Checks failed for m = %s', ', '.join(str(m) for m in failing)
        )
        raise SystemExit(1)


def _add_m(subparser):
    subparser.add_argument(
        'm',
        type=int,
        help='Field parameter: a squarefree product of primes congruent to '
        '1 mod 4 e.g. 1885'
    )


def cli():
    """
    Set up the argument parser with one subparser per pipeline stage, and run
    the requested subcommand
    :return: parsed ArgumentParser arguments
    """
    parser = ArgumentParser(
        description='Explore the order-2 ideal classes of real quadratic '
        'fields Q(sqrt(m)) with m a product of primes congruent to 1 mod 4'
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {__version__}'
    )
    subparsers, parent_parser = create_parent_parser(parser=parser)
    commands = [
        ('reps', cmd_reps,
         'List the representations m = a^2 + 4b^2 with a odd'),
        ('unit', cmd_unit,
         'Compute the fundamental unit and its norm'),
        ('classgroup', cmd_classgroup,
         'List the narrow and wide ideal classes with their cycle lengths'),
        ('ideals', cmd_ideals,
         'List the ideals (a, 2b + sqrt(m)) and the ramified prime ideals'),
        ('quartic', cmd_quartic,
         'Check the cyclic quartic fields of conductor m'),
        ('verify', cmd_verify,
         'Classify the order-2 ideal classes and check every assertion'),
    ]
    for name, func, description in commands:
        subparser = subparsers.add_parser(
            parents=[parent_parser],
            name=name,
            description=description,
            formatter_class=RawTextHelpFormatter,
            help=description
        )
        _add_m(subparser)
        subparser.set_defaults(func=func)
    scan_subparser = subparsers.add_parser(
        parents=[parent_parser],
        name='scan',
        description='Classify every valid m in a range',
        formatter_class=RawTextHelpFormatter,
        help='Classify every valid m in a range'
    )
    scan_subparser.add_argument(
        'm_min',
        type=int,
        help='Lower bound of the range (inclusive)'
    )
    scan_subparser.add_argument(
        'm_max',
        type=int,
        help='Upper bound of the range (inclusive)'
    )
    scan_subparser.add_argument(
        '-t', '--t',
        type=int,
        nargs='+',
        help='Only scan m with these numbers of prime factors'
    )
    scan_subparser.add_argument(
        '-u', '--unit_norm',
        type=int,
        choices=[-1, 1],
        help='Only scan m whose fundamental unit has this norm'
    )
    scan_subparser.add_argument(
        '-q', '--quartic',
        action='store_true',
        help='Also check the quartic field generators of every m'
    )
    scan_subparser.set_defaults(func=cmd_scan)
    batch_subparser = subparsers.add_parser(
        parents=[parent_parser],
        name='batch',
        description='Classify every m listed in a tab-separated file. Each '
        'line holds m, optionally followed by a tab and a strictness',
        formatter_class=RawTextHelpFormatter,
        help='Classify every m listed in a file'
    )
    batch_subparser.add_argument(
        '-f', '--batch_file',
        required=True,
        type=str,
        help='Tab-separated file with one m per line'
    )
    batch_subparser.add_argument(
        '-q', '--quartic',
        action='store_true',
        help='Also check the quartic field generators of every m'
    )
    batch_subparser.set_defaults(func=cmd_batch)
    # Set up the arguments, and run the appropriate subparser
    arguments = setup_arguments(parser=parser)
    return arguments


if __name__ == '__main__':
    cli()
