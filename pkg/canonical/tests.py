from django.test import SimpleTestCase, override_settings

from qscalar.exceptions import DomainError
from qscalar.models import Q, Q_MINUS_QINV, RatFunc
from rootsystem.models import (
    DynkinDiagram, ReducedWord, first_letter_words, reduced_words, weights_of_height,
)
from pbw.models import LusztigData, lusztig_data_of_weight, root_vectors
from uqminus.models import UMinusElement, divided_power, is_zero

from .models import (
    ASCENDING, DESCENDING, PrecOrder, bar_in_pbw, canonical_basis, canonical_change_of_basis,
    canonical_elements_of, precedes, positivity_spot_check, verify_minimal_elements,
    verify_unit_triangularity, verify_word_independence,
)
from .serializers import CanonicalElementSerializer, table_rows

A1 = DynkinDiagram.of('A1')
A2 = DynkinDiagram.of('A2')
A3 = DynkinDiagram.of('A3')
D4 = DynkinDiagram.of('D4')
W121 = ReducedWord(A2, (1, 2, 1))
W212 = ReducedWord(A2, (2, 1, 2))
REFERENCE = ReducedWord(A3, (1, 2, 3, 1, 2, 1))
ILLUSTRATION = ReducedWord(A3, (3, 1, 2, 1, 3, 2))
D4_WORD = first_letter_words(D4, 1)


def F(diagram, *letters, coeff=1):
    return UMinusElement.word(diagram, letters, coeff)


def data(word, *a):
    return LusztigData(word, a)


class OrderTests(SimpleTestCase):

    def test_a2_orientations(self):
        low, high = data(W121, 1, 0, 1), data(W121, 0, 1, 0)
        self.assertTrue(precedes(low, high, DESCENDING))
        self.assertFalse(precedes(high, low, DESCENDING))
        self.assertFalse(precedes(low, high, ASCENDING))

    @override_settings(QUANTUM={'SECOND_ORDER_ORIENTATION': 'sideways'})
    def test_unknown_orientation(self):
        with self.assertRaises(DomainError):
            precedes(data(W121, 1, 0, 1), data(W121, 0, 1, 0))

    def test_different_weights_are_incomparable(self):
        self.assertFalse(precedes(data(W121, 1, 0, 0), data(W121, 0, 1, 0)))

    def test_single_root_data_are_maximal(self):
        for k, beta in enumerate(REFERENCE.betas):
            order = PrecOrder(REFERENCE, beta.coords)
            unit = data(REFERENCE, *(1 if p == k else 0 for p in range(6)))
            self.assertEqual(order.maximal(), [unit])

    def test_minimal_elements(self):
        for nu in ((1, 1, 1), (1, 2, 1), (2, 1, 1)):
            self.assertTrue(verify_minimal_elements(REFERENCE, nu))
            self.assertTrue(verify_minimal_elements(ILLUSTRATION, nu))

    def test_linear_extension_respects_order(self):
        order = PrecOrder(REFERENCE, (1, 2, 1))
        extension = order.linear_extension()
        self.assertEqual(sorted(extension, key=lambda d: d.a), sorted(order.data, key=lambda d: d.a))
        for i, later in enumerate(extension):
            for earlier in extension[i + 1:]:
                self.assertFalse(order.precedes(earlier, later))


class BarTests(SimpleTestCase):

    def test_worked_example(self):
        unit = data(ILLUSTRATION, 0, 0, 0, 1, 0, 0)
        self.assertEqual(bar_in_pbw(unit), {
            unit: RatFunc(1),
            data(ILLUSTRATION, 1, 0, 0, 0, 0, 1): RatFunc(Q_MINUS_QINV),
        })

    def test_simple_support_is_bar_fixed(self):
        d = data(REFERENCE, 1, 0, 0, 1, 0, 1)
        self.assertEqual(bar_in_pbw(d), {d: RatFunc(1)})

    def test_sl2(self):
        word = ReducedWord(A1, (1,))
        for n in range(4):
            d = data(word, n)
            self.assertEqual(bar_in_pbw(d), {d: RatFunc(1)})

    def test_unit_triangularity(self):
        for word in (REFERENCE, ILLUSTRATION):
            for h in range(4):
                for nu in weights_of_height(A3, h):
                    self.assertEqual(verify_unit_triangularity(word, nu), {})

    def test_unit_triangularity_a2(self):
        for word in (W121, W212):
            for h in range(7):
                for nu in weights_of_height(A2, h):
                    self.assertEqual(verify_unit_triangularity(word, nu), {})

    def test_unit_triangularity_d4(self):
        for h in range(3):
            for nu in weights_of_height(D4, h):
                self.assertEqual(verify_unit_triangularity(D4_WORD, nu), {})


class CanonicalBasisTests(SimpleTestCase):

    def test_sl2(self):
        word = ReducedWord(A1, (1,))
        for n in range(4):
            (b,) = canonical_basis(word, (n,))
            self.assertTrue(is_zero(b.element - divided_power(A1, 1, n)))

    def test_a2_weight_one_one(self):
        basis = {b.data.a: b for b in canonical_basis(W121, (1, 1))}
        self.assertTrue(is_zero(basis[(1, 0, 1)].element - F(A2, 1, 2)))
        self.assertTrue(is_zero(basis[(0, 1, 0)].element - F(A2, 2, 1)))
        self.assertEqual(basis[(0, 1, 0)].coords, {data(W121, 0, 1, 0): RatFunc(1), data(W121, 1, 0, 1): RatFunc(Q)})

    def test_a2_serre_weight(self):
        first = divided_power(A2, 1, 2) * F(A2, 2)
        second = F(A2, 2) * divided_power(A2, 1, 2)
        found = canonical_elements_of(W121, (2, 1), [first, second])
        self.assertNotIn(None, found)
        self.assertNotEqual(found[0], found[1])

    def test_elements_are_bar_invariant_and_reduce_to_monomials(self):
        for nu in ((1, 1, 1), (1, 2, 1), (2, 1, 1)):
            for b in canonical_basis(REFERENCE, nu):
                self.assertTrue(b.is_bar_invariant())
                self.assertTrue(b.reduces_to_monomial())

    def test_independent_of_linear_extension(self):
        nu = (1, 2, 1)
        default = {b.data: b.coords for b in canonical_basis(REFERENCE, nu)}
        reversed_ties = canonical_basis(REFERENCE, nu, tie_break=lambda d: tuple(-x for x in d.a))
        self.assertEqual({b.data: b.coords for b in reversed_ties}, default)

    def test_size(self):
        self.assertEqual(len(canonical_basis(REFERENCE, (1, 2, 1))), len(lusztig_data_of_weight(REFERENCE, (1, 2, 1))))

    @override_settings(QUANTUM={'HEIGHT_BOUND': 2})
    def test_height_bound(self):
        with self.assertRaises(DomainError):
            canonical_basis(W121, (2, 1))


class ChangeOfBasisTests(SimpleTestCase):

    def test_canonical_element(self):
        self.assertEqual(canonical_change_of_basis(F(A2, 2, 1), W121), {data(W121, 0, 1, 0): RatFunc(1)})

    def test_serre_word(self):
        coords = canonical_change_of_basis(F(A2, 1, 2, 1), W121)
        self.assertEqual(sorted(coords.values(), key=str), [RatFunc(1), RatFunc(1)])

    def test_root_vector(self):
        coords = canonical_change_of_basis(root_vectors(W121)[1], W121)
        self.assertEqual(coords, {data(W121, 0, 1, 0): RatFunc(1), data(W121, 1, 0, 1): RatFunc(-Q)})


class IndependenceTests(SimpleTestCase):

    def test_same_word(self):
        self.assertTrue(verify_word_independence(W121, W121, (1, 1)).passed)

    def test_a2(self):
        for h in range(1, 5):
            for nu in weights_of_height(A2, h):
                report = verify_word_independence(W121, W212, nu)
                self.assertTrue(report.passed, report.unmatched + report.transport_mismatches)

    def test_a3(self):
        for nu in ((1, 1, 1), (1, 2, 1)):
            report = verify_word_independence(REFERENCE, ILLUSTRATION, nu)
            self.assertTrue(report.passed, report.unmatched + report.transport_mismatches)

    def test_every_a3_word(self):
        words = [word for word in reduced_words(A3) if word != REFERENCE]
        self.assertEqual(len(words), 15)
        for word in words:
            for h in range(1, 4):
                for nu in weights_of_height(A3, h):
                    report = verify_word_independence(REFERENCE, word, nu)
                    self.assertTrue(report.passed, (word, nu, report.unmatched + report.transport_mismatches))


class PositivityTests(SimpleTestCase):

    def test_a2_products(self):
        self.assertEqual(positivity_spot_check(W121, (1, 0), (0, 1)), [])
        self.assertEqual(positivity_spot_check(W121, (1, 0), (1, 1)), [])


class SerializerTests(SimpleTestCase):

    def test_element_row(self):
        basis = canonical_basis(W121, (1, 1))
        row = CanonicalElementSerializer(basis[-1], context={'diagram': A2}).data
        self.assertIn(row['data']['a'], ([1, 0, 1], [0, 1, 0]))
        self.assertEqual(len(table_rows(basis)), 2)
