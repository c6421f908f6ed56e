# cli/base.py

import csv
import io
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from django.test.utils import override_settings
from rest_framework.renderers import JSONRenderer

from qscalar.exceptions import DomainError
from .conf import load_run_config

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
SUITE_FAILURE = 1


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8') + '\n'


def render_csv(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerows(rows)
    return buffer.getvalue()


def render_text(rows):
    return ''.join('\t'.join(str(cell) for cell in row) + '\n' for row in rows)


def parse_vector(text, name):
    try:
        return tuple(int(part) for part in str(text).split(','))
    except ValueError:
        raise DomainError(f"--{name} expects comma-separated integers, got '{text}'.")


class QuantumCommand(BaseCommand):
    """
    Shared flags, config loading and output for every command. Subclasses set
    `formats` and implement build(config, options), returning the text to emit.
    Domain errors end the command with exit code 2.
    """
    formats = ('json',)

    def add_arguments(self, parser):
        parser.add_argument('--type', dest='cartan_type', help='ADE type such as A2, A3 or D4.')
        parser.add_argument('--word', help='Reduced word of w0 as 1,2,1; defaults to the reference word.')
        parser.add_argument('--max-height', dest='max_height', type=int, help='Height bound for this run.')
        parser.add_argument('--format', dest='output_format', help=f'One of {", ".join(self.formats)}.')
        parser.add_argument('--seed', type=int, help='Seed for sampled checks.')
        parser.add_argument('--orientation', help='Second comparison of the order: descending or ascending.')
        parser.add_argument('--out', help='Write the output to this file instead of stdout.')
        parser.add_argument('--config', help='Plain-text key=value file; flags override it.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            config = load_run_config(options)
            if config.output_format not in self.formats:
                raise DomainError(
                    f"Format '{config.output_format}' is not available here; use one of {', '.join(self.formats)}."
                )
            with override_settings(QUANTUM=config.quantum_settings()):
                output = self.build(config, options)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=USAGE_ERROR)
        self.emit(output, options.get('out'))
        self.finish()

    def build(self, config, options):
        raise NotImplementedError

    def finish(self):
        pass

    def emit(self, output, path):
        if path:
            with open(path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(output)
            logger.info("Wrote %s.", path)
        else:
            self.stdout.write(output, ending='')
