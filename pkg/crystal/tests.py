from django.test import SimpleTestCase, override_settings

from qscalar.exceptions import DomainError
from rootsystem.models import DynkinDiagram, ReducedWord, weights_of_height
from pbw.models import LusztigData, lusztig_data_of_weight
from canonical.models import canonical_basis

from .models import (
    HighestWeight, crystal_e, crystal_f, crystal_graph, descent_report, worked_instance_report,
    freudenthal_multiplicities, ideal_membership, kostant_counts, partial_inverse_problems,
    reference_word, verify_kashiwara_agreement, weyl_dimension,
)
from .serializers import CrystalGraphSerializer, DescentReportSerializer, HighestWeightField

A1 = DynkinDiagram.of('A1')
A2 = DynkinDiagram.of('A2')
A3 = DynkinDiagram.of('A3')
SL2 = ReducedWord(A1, (1,))
W121 = ReducedWord(A2, (1, 2, 1))
REFERENCE = ReducedWord(A3, (1, 2, 3, 1, 2, 1))


def data(word, *a):
    return LusztigData(word, a)


class CrystalOperatorTests(SimpleTestCase):

    def test_first_letter_increments_directly(self):
        self.assertEqual(crystal_f(1, data(REFERENCE, 0, 1, 0, 2, 0, 1)).a, (1, 1, 0, 2, 0, 1))

    @override_settings(QUANTUM={'HEIGHT_BOUND': 40})
    def test_three_exponents_change(self):
        word = ReducedWord(A3, (1, 3, 2, 1, 3, 2))
        image = crystal_f(2, data(word, 2, 3, 3, 2, 3, 2))
        self.assertEqual(image.a, (2, 3, 2, 3, 4, 2))

    @override_settings(QUANTUM={'HEIGHT_BOUND': 40})
    def test_worked_a3_instance(self):
        self.assertEqual(crystal_f(3, data(REFERENCE, 2, 3, 1, 3, 3, 2)).a, (2, 3, 1, 2, 4, 2))

    def test_worked_instance_report(self):
        report = worked_instance_report()
        self.assertTrue(report['first_maps_to_second'])
        self.assertEqual(report['candidates'][0]['changed_positions'], [4, 5])

    def test_height_bound(self):
        with self.assertRaises(DomainError):
            crystal_f(2, data(REFERENCE, 2, 3, 1, 3, 3, 2))

    def test_sl2(self):
        for n in range(5):
            self.assertEqual(crystal_f(1, data(SL2, n)).a, (n + 1,))

    def test_partial_inverse(self):
        self.assertIsNone(crystal_e(2, data(W121, 0, 0, 0)))
        self.assertIsNone(crystal_e(1, data(W121, 0, 0, 1)))
        for nu in ((1, 1), (2, 1), (1, 2)):
            self.assertEqual(partial_inverse_problems(W121, nu), [])
        self.assertEqual(partial_inverse_problems(REFERENCE, (1, 1, 1)), [])

    def test_weight_moves_by_simple_root(self):
        for d in lusztig_data_of_weight(REFERENCE, (1, 1, 0)):
            self.assertEqual(crystal_f(3, d).weight(), (1, 1, 1))

    def test_reference_words(self):
        self.assertEqual(reference_word(A3), REFERENCE)
        self.assertEqual(reference_word('A2'), W121)
        self.assertEqual(reference_word(DynkinDiagram.of('D4')).letters[0], 1)


class KashiwaraAgreementTests(SimpleTestCase):

    def test_sl2(self):
        for n in range(5):
            self.assertTrue(verify_kashiwara_agreement(1, data(SL2, n)).passed)

    def test_a2(self):
        for h in range(4):
            for nu in weights_of_height(A2, h):
                for d in lusztig_data_of_weight(W121, nu):
                    for i in A2.nodes:
                        report = verify_kashiwara_agreement(i, d)
                        self.assertTrue(report.passed, report.problems)

    def test_a3_small(self):
        for d in lusztig_data_of_weight(REFERENCE, (1, 1, 0)):
            for i in A3.nodes:
                self.assertTrue(verify_kashiwara_agreement(i, d).passed)


class CrystalGraphTests(SimpleTestCase):

    def test_depth_zero(self):
        graph = crystal_graph(W121, 0)
        self.assertEqual(len(graph.vertices), 1)
        self.assertEqual(graph.edges, [])

    def test_sl2_is_a_path(self):
        graph = crystal_graph(SL2, 4)
        self.assertEqual(len(graph.vertices), 5)
        self.assertEqual(len(graph.edges), 4)

    def test_a2_counts(self):
        graph = crystal_graph(W121, 3)
        self.assertEqual(graph.counts_per_depth(), [1, 2, 4, 6])
        self.assertEqual(kostant_counts(A2, 3), [1, 2, 4, 6])

    def test_a3_counts(self):
        self.assertEqual(crystal_graph(REFERENCE, 3).counts_per_depth(), kostant_counts(A3, 3))

    def test_dot(self):
        graph = crystal_graph(W121, 2)
        dot = graph.to_dot()
        self.assertTrue(dot.startswith('digraph crystal_A2 {'))
        self.assertEqual(dot.count('->'), len(graph.edges))
        self.assertIn('v0 -> v1 [label="1"];', dot)

    def test_deterministic(self):
        self.assertEqual(crystal_graph(W121, 3).to_dot(), crystal_graph(W121, 3).to_dot())

    def test_json(self):
        payload = CrystalGraphSerializer(crystal_graph(W121, 2)).data
        self.assertEqual(len(payload['nodes']), 5)
        self.assertEqual(payload['links'][0], {'source': 0, 'target': 1, 'operator': 'f_1'})

    def test_depth_above_bound(self):
        with self.assertRaises(DomainError):
            crystal_graph(W121, 9)


class DimensionTests(SimpleTestCase):

    def test_weyl_dimension(self):
        self.assertEqual(weyl_dimension(HighestWeight(A1, (2,))), 3)
        self.assertEqual(weyl_dimension(HighestWeight(A2, (1, 0))), 3)
        self.assertEqual(weyl_dimension(HighestWeight(A2, (1, 1))), 8)
        self.assertEqual(weyl_dimension(HighestWeight(A3, (0, 1, 0))), 6)

    def test_freudenthal(self):
        adjoint = freudenthal_multiplicities(HighestWeight(A2, (1, 1)))
        self.assertEqual(adjoint[(1, 1)], 2)
        self.assertEqual(sum(adjoint.values()), 8)
        self.assertEqual(freudenthal_multiplicities(HighestWeight(A1, (2,))), {(0,): 1, (1,): 1, (2,): 1})
        self.assertEqual(sum(freudenthal_multiplicities(HighestWeight(A3, (0, 1, 0))).values()), 6)

    def test_trivial_weight(self):
        self.assertEqual(freudenthal_multiplicities(HighestWeight(A2, (0, 0))), {(0, 0): 1})

    def test_bad_weight(self):
        with self.assertRaises(DomainError):
            HighestWeight(A2, (1, -1))
        with self.assertRaises(DomainError):
            HighestWeight.parse(A2, '1,x')


class DescentTests(SimpleTestCase):

    def test_sl2_membership(self):
        lam = HighestWeight(A1, (1,))
        for m in range(4):
            (b,) = canonical_basis(SL2, (m,))
            self.assertEqual(ideal_membership(b, lam), m >= 2)

    def test_zero_weight_ideal(self):
        lam = HighestWeight(A2, (0, 0))
        for nu in ((1, 0), (1, 1), (2, 1)):
            for b in canonical_basis(W121, nu):
                self.assertTrue(ideal_membership(b, lam))

    def test_sl2(self):
        report = descent_report(HighestWeight(A1, (2,)), SL2)
        self.assertEqual(report.total, 3)
        self.assertTrue(report.passed)

    def test_a2_defining(self):
        report = descent_report(HighestWeight(A2, (1, 0)))
        self.assertEqual(report.total, 3)
        self.assertTrue(report.passed, report.mechanism_problems)

    def test_a2_adjoint(self):
        report = descent_report(HighestWeight(A2, (1, 1)))
        self.assertEqual(report.total, 8)
        self.assertTrue(report.passed, report.mechanism_problems)
        rows = {tuple(int(x) for x in row[0].split(',')): row[1] for row in report.csv_rows()[1:]}
        self.assertEqual(rows[(1, 1)], 2)

    def test_a3_second_fundamental(self):
        lam = HighestWeight(A3, (0, 1, 0))
        report = descent_report(lam, REFERENCE)
        self.assertEqual(report.total, 6)
        self.assertTrue(report.passed, report.mechanism_problems)
        multiplicities = freudenthal_multiplicities(lam)
        self.assertEqual(multiplicities[(1, 2, 1)], 1)
        self.assertEqual({row.nu: row.survivors for row in report.nonzero_rows}, multiplicities)

    def test_csv_header(self):
        report = descent_report(HighestWeight(A1, (1,)), SL2)
        self.assertEqual(report.csv_rows()[0], ['weight', 'survivors', 'multiplicity'])
        self.assertEqual(len(report.csv_rows()), 3)


class SerializerTests(SimpleTestCase):

    def test_highest_weight_field(self):
        field = HighestWeightField()
        field._context = {'diagram': A2}
        self.assertEqual(field.to_internal_value('1,1'), HighestWeight(A2, (1, 1)))
        self.assertEqual(field.to_representation(HighestWeight(A2, (0, 2))), [0, 2])

    def test_descent_report_json(self):
        payload = DescentReportSerializer(descent_report(HighestWeight(A2, (1, 0)), W121)).data
        self.assertEqual(payload['highest_weight'], [1, 0])
        self.assertEqual(payload['word'], [1, 2, 1])
        self.assertEqual(payload['dimension'], 3)
        self.assertTrue(payload['passed'])
        self.assertEqual([row['nu'] for row in payload['rows']], [[0, 0], [1, 0], [1, 1]])
        self.assertEqual([row['survivors'] for row in payload['rows']], [1, 1, 1])
