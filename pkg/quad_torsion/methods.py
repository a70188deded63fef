#!/usr/bin/env python

"""
Collection of methods shared by the QuadTorsion modules and command line
"""

# Standard imports
from argparse import ArgumentParser
from dataclasses import (
    asdict,
    dataclass
)
import logging
import os
import sys

# Third party imports
import coloredlogs

# Prefix of the environment variables that override command line defaults
ENV_PREFIX = 'QUADTORSION'

STRICTNESS_CHOICES = ('narrow', 'wide', 'both')
FORMAT_CHOICES = ('json', 'csv', 'text')
VERBOSITY_CHOICES = ('debug', 'info', 'warning', 'error', 'critical')


class InvalidInputError(ValueError):
    """
    Raised when an argument violates the precondition of an operation e.g. an
    m that is not a squarefree product of primes congruent to 1 mod 4
    """


class InconsistencyError(RuntimeError):
    """
    Raised when an internal invariant fails. This always indicates a bug
    upstream of the point where it is raised
    """


def env_default(option, default):
    """
    Look up the environment override for a command line option
    :param option: type str: Name of the option e.g. seed
    :param default: Value to use when the environment variable is not set
    :return: The environment value (as a string) or the default
    """
    return os.environ.get(f'{ENV_PREFIX}_{option.upper()}', default)


@dataclass
class RunConfig:
    """
    Options shared by every subcommand.

    Attributes:
        seed (int): Seed of the global random number generator.
        strictness (str): narrow, wide, or both.
        output_format (str): json, csv, or text.
        jobs (int): Number of worker processes used by scan.
        verbosity (str): Logging level.
        out (str): Name and path of the output file. Empty for stdout.
        timings (bool): Whether reports carry elapsed times.
    """
    seed: int = 0
    strictness: str = 'both'
    output_format: str = 'text'
    jobs: int = 1
    verbosity: str = 'info'
    out: str = ''
    timings: bool = False

    def __post_init__(self):
        try:
            self.seed = int(self.seed)
            self.jobs = int(self.jobs)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(
                f'seed and jobs must be integers, not {self.seed} and '
                f'{self.jobs}'
            ) from exc
        if self.strictness not in STRICTNESS_CHOICES:
            raise InvalidInputError(
                f'strictness must be one of {", ".join(STRICTNESS_CHOICES)}, '
                f'not {self.strictness}'
            )
        if self.output_format not in FORMAT_CHOICES:
            raise InvalidInputError(
                f'format must be one of {", ".join(FORMAT_CHOICES)}, '
                f'not {self.output_format}'
            )
        if self.jobs < 1:
            raise InvalidInputError('jobs must be at least 1')

    @classmethod
    def from_arguments(cls, arguments):
        """
        Create the configuration from parsed ArgumentParser arguments. Missing
        attributes fall back to the defaults
        :param arguments: type parsed ArgumentParser object
        :return: RunConfig
        """
        return cls(
            seed=getattr(arguments, 'seed', 0),
            strictness=getattr(arguments, 'strictness', 'both'),
            output_format=getattr(arguments, 'format', 'text'),
            jobs=getattr(arguments, 'jobs', 1),
            verbosity=getattr(arguments, 'verbosity', 'info'),
            out=getattr(arguments, 'out', '') or '',
            timings=bool(getattr(arguments, 'timings', False)),
        )

    def to_dict(self):
        """
        :return: dict of option name: value
        """
        return asdict(self)

    @classmethod
    def from_dict(cls, values):
        """
        :param values: type dict: Output of to_dict
        :return: RunConfig
        """
        return cls(**values)


def create_parent_parser(parser):
    """
    Create a parent parser with the arguments common to every subcommand
    :param parser: type ArgumentParser object
    :return: subparsers: type ArgumentParser.add_subparsers
    :return: parent_parser: type ArgumentParser: Populated ArgumentParser
        object
    """
    subparsers = parser.add_subparsers(title='Available functionality')
    # Create a parental parser that can be inherited by subparsers
    parent_parser = ArgumentParser(add_help=False)
    parent_parser.add_argument(
        '--seed',
        type=int,
        default=env_default('seed', 0),
        help='Seed of the random number generator used by the modular square '
        'root and factoring routines. Default is 0.'
    )
    parent_parser.add_argument(
        '--strictness',
        choices=STRICTNESS_CHOICES,
        default=env_default('strictness', 'both'),
        help='Ideal class equivalence to report: narrow, wide, or both. '
        'Theorem checks use wide equivalence unless narrow is requested. '
        'Default is both.'
    )
    parent_parser.add_argument(
        '--format',
        choices=FORMAT_CHOICES,
        default=env_default('format', 'text'),
        help='Output format: json, csv, or text. Default is text.'
    )
    parent_parser.add_argument(
        '--jobs',
        type=int,
        default=env_default('jobs', 1),
        help='Number of worker processes used by scan. Default is 1.'
    )
    parent_parser.add_argument(
        '--out',
        type=str,
        default=env_default('out', str()),
        help='Optionally provide the name and path of the file in which the '
        'outputs are to be saved. Default is the terminal.'
    )
    parent_parser.add_argument(
        '--timings',
        action='store_true',
        help='Add elapsed times to the reports. Reports are no longer '
        'byte-reproducible when this is set.'
    )
    parent_parser.add_argument(
        '-v',
        '--verbosity',
        choices=VERBOSITY_CHOICES,
        metavar='VERBOSITY',
        default=env_default('verbosity', 'info'),
        help='Set the logging level. Options are debug, info, warning, error, '
        'and critical. Default is info.'
    )
    return subparsers, parent_parser


def setup_logging(verbosity):
    """
    Set the custom colour scheme and message format to used by coloredlogs
    :param verbosity: type str: Logging level e.g. info
    """
    coloredlogs.DEFAULT_LEVEL_STYLES = {
        'debug': {
            'bold': True, 'color': 'green'},
        'info': {
            'bold': True, 'color': 'blue'},
        'warning': {
            'bold': True, 'color': 'yellow'},
        'error': {
            'bold': True, 'color': 'red'},
        'critical': {
            'bold': True, 'background': 'red'}
    }
    coloredlogs.DEFAULT_LOG_FORMAT = '%(asctime)s %(levelname)s %(message)s'
    coloredlogs.install(level=verbosity.upper(), stream=sys.stderr)


def setup_arguments(parser):
    """
    Finalise setting up the ArgumentParser arguments into an object, and
    running subparser functions, or displaying the help message
    :param parser: type: ArgumentParser object
    :return: parsed ArgumentParser object
    """
    arguments = parser.parse_args()
    # Run the appropriate function for each sub-parser
    if hasattr(arguments, 'func'):
        setup_logging(verbosity=arguments.verbosity)
        arguments.func(arguments)
    # Without a subcommand, display the basic help
    else:
        parser.parse_args(['-h'])
    return arguments


def prepare_output_file(output_file):
    """
    Expand and validate the name of an output file, creating its parental
    directory as required
    :param output_file: type str: Name and path of the output file. Can be
        empty, in which case outputs go to the terminal
    :return: output_file: Absolute path of the output file, or an empty string
    """
    if not output_file:
        return str()
    if output_file.startswith('~'):
        output_file = os.path.expanduser(output_file)
    output_file = os.path.abspath(output_file)
    if os.path.isdir(output_file):
        logging.error(
            'A directory was provided for the output file %s',
            output_file
        )
        raise SystemExit(2)
    try:
        # Create the parental directory for the output file as required
        os.makedirs(os.path.dirname(output_file), exist_ok=True)
        open(output_file, 'w', encoding='utf-8').close()
    except PermissionError as exc:
        logging.error(
            'Insufficient permissions to create output file %s',
            output_file
        )
        raise SystemExit(2) from exc
    return output_file


def write_output(text, output_file=str()):
    """
    Write text to the output file (appending) or to stdout
    :param text: type str: Text to write. A newline is appended
    :param output_file: type str: Name and path of the output file. Empty
        strings write to the terminal
    """
    if output_file:
        with open(output_file, 'a', encoding='utf-8') as output:
            output.write(f'{text}\n')
    else:
        sys.stdout.write(f'{text}\n')
