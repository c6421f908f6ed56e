# cli/management/commands/crystal.py

from cli.base import QuantumCommand, render_csv, render_json
from crystal.models import HighestWeight, crystal_graph, descent_report
from crystal.serializers import CrystalGraphSerializer, DescentReportSerializer


class Command(QuantumCommand):
    help = (
        'Emits the crystal graph of B(infinity) to a depth, or with --highest-weight the '
        'descent of the canonical basis to V_lambda.'
    )
    formats = ('json', 'dot', 'csv')

    def add_command_arguments(self, parser):
        parser.add_argument('--depth', type=int, default=3, help='Number of crystal steps from the root.')
        parser.add_argument('--highest-weight', dest='highest_weight',
                            help='Fundamental-weight coefficients such as 1,1; switches to the descent report.')

    def build(self, config, options):
        if options.get('highest_weight'):
            lam = HighestWeight.parse(config.diagram, options['highest_weight'])
            report = descent_report(lam, config.word)
            if config.output_format == 'csv':
                return render_csv(report.csv_rows())
            return render_json(DescentReportSerializer(report).data)
        graph = crystal_graph(config.word, options['depth'])
        if config.output_format == 'dot':
            return graph.to_dot()
        return render_json(CrystalGraphSerializer(graph).data)
