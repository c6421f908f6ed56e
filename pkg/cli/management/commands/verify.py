# cli/management/commands/verify.py

from django.core.management.base import CommandError

from cli.base import SUITE_FAILURE, QuantumCommand, render_json
from cli.serializers import SuiteRunSerializer
from cli.suites import SUITES, run_suites


class Command(QuantumCommand):
    help = 'Runs property suites and writes a JSON report; exits with 1 when any check fails.'

    def add_command_arguments(self, parser):
        parser.add_argument('--suite', default='all', help=f'One of {", ".join(SUITES)} or all.')

    def build(self, config, options):
        self.run = run_suites(config, options['suite'])
        return render_json(dict(SuiteRunSerializer(self.run).data, suite=options['suite']))

    def finish(self):
        failed = self.run.failed
        if failed:
            names = ', '.join(f'{r.suite}/{r.name}' for r in failed[:5])
            raise CommandError(f'{len(failed)} checks failed: {names}', returncode=SUITE_FAILURE)
