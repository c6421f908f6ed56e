import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from qscalar.exceptions import DomainError
from .conf import load_run_config, read_config_file
from .signals import property_checked


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO())
    return out.getvalue()


class RootsCommandTests(SimpleTestCase):

    def test_a2_rows(self):
        payload = json.loads(run('roots', '--type', 'A2', '--word', '1,2,1'))
        self.assertEqual([row['label'] for row in payload['rows']], ['1', '12', '2'])
        self.assertEqual(payload['rows'][1]['root'], [1, 1])

    def test_a3_reference_order(self):
        payload = json.loads(run('roots', '--type', 'A3', '--word', '1,2,3,1,2,1'))
        self.assertEqual([row['label'] for row in payload['rows']], ['1', '12', '123', '2', '23', '3'])

    def test_not_reduced(self):
        with self.assertRaises(CommandError) as caught:
            run('roots', '--type', 'A2', '--word', '1,1,2')
        self.assertEqual(caught.exception.returncode, 2)

    def test_csv(self):
        lines = run('roots', '--type', 'A2', '--word', '1,2,1', '--format', 'csv').splitlines()
        self.assertEqual(lines[0], 'position,letter,root,vector')
        self.assertEqual(len(lines), 4)

    def test_unavailable_format(self):
        with self.assertRaises(CommandError) as caught:
            run('roots', '--type', 'A2', '--format', 'dot')
        self.assertEqual(caught.exception.returncode, 2)


class CanonicalCommandTests(SimpleTestCase):

    def test_a2(self):
        payload = json.loads(run('canonical', '--type', 'A2', '--weight', '1,1'))
        self.assertEqual(len(payload['elements']), 2)
        self.assertTrue(all(element['bar_invariant'] for element in payload['elements']))

    def test_sl2(self):
        payload = json.loads(run('canonical', '--type', 'A1', '--weight', '3'))
        self.assertEqual(len(payload['elements']), 1)

    def test_weight_above_bound(self):
        with self.assertRaises(CommandError) as caught:
            run('canonical', '--type', 'A2', '--weight', '3,2', '--max-height', '4')
        self.assertEqual(caught.exception.returncode, 2)

    def test_missing_weight(self):
        with self.assertRaises(CommandError) as caught:
            run('canonical', '--type', 'A2')
        self.assertEqual(caught.exception.returncode, 2)


class CrystalCommandTests(SimpleTestCase):

    def test_dot(self):
        dot = run('crystal', '--type', 'A2', '--depth', '2', '--format', 'dot')
        self.assertTrue(dot.startswith('digraph crystal_A2 {'))
        self.assertTrue(dot.rstrip().endswith('}'))

    def test_json_counts(self):
        payload = json.loads(run('crystal', '--type', 'A2', '--depth', '3'))
        self.assertEqual(payload['counts'], [1, 2, 4, 6])

    def test_descent_csv(self):
        lines = run('crystal', '--type', 'A2', '--highest-weight', '1,0', '--format', 'csv').splitlines()
        self.assertEqual(lines[0], 'weight,survivors,multiplicity')
        self.assertEqual(len(lines), 4)

    def test_descent_json(self):
        payload = json.loads(run('crystal', '--type', 'A2', '--highest-weight', '1,1'))
        self.assertEqual(payload['highest_weight'], [1, 1])
        self.assertEqual(payload['total'], 8)
        self.assertTrue(payload['passed'])

    def test_output_file_is_deterministic(self):
        with tempfile.TemporaryDirectory() as tmp:
            paths = [os.path.join(tmp, name) for name in ('first.dot', 'second.dot')]
            for path in paths:
                run('crystal', '--type', 'A2', '--depth', '3', '--format', 'dot', '--out', path)
            with open(paths[0], 'rb') as first, open(paths[1], 'rb') as second:
                self.assertEqual(first.read(), second.read())


class VerifyCommandTests(SimpleTestCase):

    def test_relations(self):
        payload = json.loads(run('verify', '--suite', 'relations', '--type', 'A2'))
        self.assertEqual(payload['failed'], 0)
        self.assertGreater(payload['checked'], 0)

    def test_braid_relations(self):
        payload = json.loads(run('verify', '--suite', 'braid-relations', '--type', 'A2'))
        self.assertEqual(payload['failed'], 0)

    def test_unit_triangularity(self):
        payload = json.loads(run('verify', '--suite', 'thm-ut', '--type', 'A2', '--max-height', '3'))
        self.assertEqual(payload['failed'], 0)

    def test_report_fields(self):
        payload = json.loads(run('verify', '--suite', 'relations', '--type', 'A2'))
        self.assertEqual(payload['type'], 'A2')
        self.assertEqual(payload['word'], [1, 2, 1])
        self.assertEqual(payload['suite'], 'relations')
        self.assertEqual(payload['passed'], payload['checked'])
        self.assertEqual(set(payload['results'][0]), {'suite', 'name', 'passed', 'detail'})

    def test_positivity_only_notes(self):
        payload = json.loads(run('verify', '--suite', 'positivity', '--type', 'A2'))
        self.assertEqual(payload['checked'], 0)
        self.assertEqual(len(payload['notes']), 4)
        self.assertTrue(all(note['suite'] == 'positivity' for note in payload['notes']))

    def test_unknown_suite(self):
        with self.assertRaises(CommandError) as caught:
            run('verify', '--suite', 'nonsense', '--type', 'A2')
        self.assertEqual(caught.exception.returncode, 2)

    def test_checks_are_signalled(self):
        seen = []

        def count(sender, **kwargs):
            seen.append(kwargs['name'])

        property_checked.connect(count)
        try:
            payload = json.loads(run('verify', '--suite', 'is-a-basis', '--type', 'A2', '--max-height', '2'))
        finally:
            property_checked.disconnect(count)
        self.assertEqual(len(seen), payload['checked'])


class RunConfigTests(SimpleTestCase):

    def write(self, text):
        handle = tempfile.NamedTemporaryFile('w', suffix='.cfg', delete=False, encoding='utf-8')
        handle.write(text)
        handle.close()
        self.addCleanup(os.remove, handle.name)
        return handle.name

    def test_file_values(self):
        path = self.write('# run\ntype = A2\n\nword=2,1,2\nmax-height=4\n')
        self.assertEqual(read_config_file(path), {'cartan_type': 'A2', 'word': '2,1,2', 'max_height': '4'})
        config = load_run_config({'config': path})
        self.assertEqual(config.word.letters, (2, 1, 2))
        self.assertEqual(config.height_bound, 4)

    def test_flags_override_file(self):
        path = self.write('type=A2\nword=2,1,2\n')
        config = load_run_config({'config': path, 'word': '1,2,1'})
        self.assertEqual(config.word.letters, (1, 2, 1))

    def test_defaults(self):
        config = load_run_config({'cartan_type': 'A3'})
        self.assertEqual(config.word.letters, (1, 2, 3, 1, 2, 1))
        self.assertEqual(config.sweep_height, 3)
        self.assertEqual(config.output_format, 'json')

    def test_bad_key(self):
        path = self.write('colour=blue\n')
        with self.assertRaises(DomainError):
            load_run_config({'config': path})

    def test_bad_value(self):
        with self.assertRaises(DomainError):
            load_run_config({'cartan_type': 'A2', 'max_height': 0})

    def test_command_reads_file(self):
        path = self.write('type=A2\nword=2,1,2\n')
        payload = json.loads(run('roots', '--config', path))
        self.assertEqual(payload['word'], [2, 1, 2])
