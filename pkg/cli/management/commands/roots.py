# cli/management/commands/roots.py

from cli.base import QuantumCommand, render_csv, render_json, render_text
from pbw.models import root_vectors
from rootsystem.serializers import RootRowSerializer


class Command(QuantumCommand):
    help = 'Lists the beta sequence of a reduced word of w0 and its root vectors.'
    formats = ('json', 'csv', 'text')

    def build(self, config, options):
        table = root_vectors(config.word)
        rows = []
        for k, (letter, beta) in enumerate(zip(config.word.letters, config.word.betas)):
            row = RootRowSerializer({'position': k + 1, 'letter': letter, 'root': beta, 'label': beta.label()}).data
            row['vector'] = str(table[k])
            rows.append(row)
        if config.output_format == 'json':
            return render_json({
                'type': config.diagram.cartan_type,
                'word': list(config.word.letters),
                'rows': rows,
            })
        lines = [[row['position'], row['letter'], row['label'], row['vector']] for row in rows]
        if config.output_format == 'csv':
            return render_csv([['position', 'letter', 'root', 'vector']] + lines)
        return render_text(lines)
