# cli/management/commands/canonical.py

from cli.base import QuantumCommand, parse_vector, render_csv, render_json, render_text
from canonical.models import canonical_basis
from canonical.serializers import CanonicalElementSerializer, table_rows
from qscalar.exceptions import DomainError


class Command(QuantumCommand):
    help = 'Computes the canonical basis of one weight space, indexed by Lusztig data on the word.'
    formats = ('json', 'csv', 'text')

    def add_command_arguments(self, parser):
        parser.add_argument('--weight', help='Weight in simple-root coordinates, such as 1,1.')

    def build(self, config, options):
        if not options.get('weight'):
            raise DomainError('--weight is required.')
        nu = config.diagram.validate_weight(parse_vector(options['weight'], 'weight'))
        basis = canonical_basis(config.word, nu)
        invariant = [b.is_bar_invariant() for b in basis]
        if config.output_format == 'json':
            elements = CanonicalElementSerializer(basis, many=True, context={'diagram': config.diagram}).data
            for element, flag in zip(elements, invariant):
                element['bar_invariant'] = flag
            return render_json({
                'type': config.diagram.cartan_type,
                'word': list(config.word.letters),
                'weight': list(nu),
                'elements': elements,
            })
        rows = [row + [flag] for row, flag in zip(table_rows(basis), invariant)]
        if config.output_format == 'csv':
            return render_csv([['data', 'pbw_coordinates', 'element', 'bar_invariant']] + rows)
        return render_text(rows)
