import random

from django.test import SimpleTestCase

from qscalar.exceptions import DomainError
from qscalar.models import Q, Q_MINUS_QINV, RatFunc
from rootsystem.models import (
    THREE_TERM, TWO_TERM, BraidMove, DynkinDiagram, ReducedWord, apply_braid_move,
    braid_graph_path, first_letter_words, kostant_partition, legal_moves, reduced_words,
    weights_of_height,
)
from uqminus.models import UMinusElement, bar, is_zero

from .models import (
    LusztigData, lusztig_data_of_weight, pbw_expand, pbw_monomial, pl_bijection,
    root_vectors, transport, verify_compspan, verify_convex_support, verify_is_a_basis,
    verify_lattice_move, verify_root_vector_recursion,
)
from .serializers import LusztigDataSerializer, expansion_rows

A2 = DynkinDiagram.of('A2')
A3 = DynkinDiagram.of('A3')
D4 = DynkinDiagram.of('D4')
W121 = ReducedWord(A2, (1, 2, 1))
W212 = ReducedWord(A2, (2, 1, 2))
ILLUSTRATION = ReducedWord(A3, (3, 1, 2, 1, 3, 2))
REFERENCE = ReducedWord(A3, (1, 2, 3, 1, 2, 1))


def F(diagram, *letters, coeff=1):
    return UMinusElement.word(diagram, letters, coeff)


def data(word, *a):
    return LusztigData(word, a)


class RootVectorTests(SimpleTestCase):

    def test_a2(self):
        table = root_vectors(W121)
        self.assertTrue(is_zero(table[0] - F(A2, 1)))
        self.assertTrue(is_zero(table[1] - (F(A2, 2, 1) - F(A2, 1, 2, coeff=Q))))
        self.assertTrue(is_zero(table[2] - F(A2, 2)))

    def test_worked_a3_word(self):
        table = root_vectors(ILLUSTRATION)
        f23 = F(A3, 2, 3) - F(A3, 3, 2, coeff=Q)
        self.assertTrue(is_zero(table[3] - f23))
        self.assertTrue(is_zero(table[2] - (f23 * F(A3, 1) - F(A3, 1) * f23.scale(Q))))

    def test_weights(self):
        table = root_vectors(REFERENCE)
        for k, beta in enumerate(REFERENCE.betas):
            self.assertEqual(table[k].weight(), beta.coords)

    def test_requires_full_word(self):
        with self.assertRaises(DomainError):
            root_vectors(ReducedWord(A3, (1, 2)))

    def test_recursion_under_moves(self):
        for word in (W121, REFERENCE, ILLUSTRATION):
            self.assertEqual(verify_root_vector_recursion(word), [])


class MonomialTests(SimpleTestCase):

    def test_zero_data(self):
        self.assertEqual(pbw_monomial(data(W121, 0, 0, 0)), UMinusElement.one(A2))

    def test_root_vector(self):
        self.assertTrue(is_zero(pbw_monomial(data(W121, 0, 1, 0)) - (F(A2, 2, 1) - F(A2, 1, 2, coeff=Q))))

    def test_generators(self):
        self.assertTrue(is_zero(pbw_monomial(data(W121, 1, 0, 1)) - F(A2, 1, 2)))

    def test_bad_data(self):
        with self.assertRaises(DomainError):
            data(W121, 1, 0)
        with self.assertRaises(DomainError):
            data(W121, 1, -1, 0)

    def test_data_counts_match_kostant(self):
        for h in range(4):
            for nu in weights_of_height(A3, h):
                found = lusztig_data_of_weight(REFERENCE, nu)
                self.assertEqual(len(found), kostant_partition(A3, nu))
                self.assertTrue(all(d.weight() == nu for d in found))


class ExpansionTests(SimpleTestCase):

    def test_word_in_pbw_basis(self):
        coords = pbw_expand(F(A2, 2, 1), W121)
        self.assertEqual(coords, {data(W121, 0, 1, 0): RatFunc(1), data(W121, 1, 0, 1): RatFunc(Q)})

    def test_bar_of_root_vector(self):
        coords = pbw_expand(bar(root_vectors(W121)[1]), W121)
        self.assertEqual(coords, {data(W121, 0, 1, 0): RatFunc(1), data(W121, 1, 0, 1): RatFunc(Q_MINUS_QINV)})

    def test_round_trip(self):
        for nu in ((1, 1, 1), (1, 2, 1)):
            for d in lusztig_data_of_weight(REFERENCE, nu):
                self.assertEqual(pbw_expand(pbw_monomial(d), REFERENCE), {d: RatFunc(1)})

    def test_zero(self):
        self.assertEqual(pbw_expand(UMinusElement.zero(A2), W121), {})

    def test_is_a_basis(self):
        for word in (REFERENCE, ILLUSTRATION):
            for h in range(4):
                for nu in weights_of_height(A3, h):
                    self.assertTrue(verify_is_a_basis(word, nu))

    def test_is_a_basis_a2(self):
        for word in (W121, W212):
            for h in range(7):
                for nu in weights_of_height(A2, h):
                    self.assertTrue(verify_is_a_basis(word, nu))

    def test_is_a_basis_d4(self):
        word = first_letter_words(D4, 1)
        self.assertEqual(len(word), 12)
        for h in range(3):
            for nu in weights_of_height(D4, h):
                self.assertTrue(verify_is_a_basis(word, nu))


class PiecewiseLinearTests(SimpleTestCase):

    def test_three_term_formulas(self):
        word = ReducedWord(A2, (1, 2, 1))
        move = BraidMove(0, THREE_TERM)
        self.assertEqual(pl_bijection(move, data(word, 2, 0, 1)).a, (0, 1, 1))
        self.assertEqual(pl_bijection(move, data(word, 3, 0, 0)).a, (0, 0, 3))
        self.assertEqual(pl_bijection(move, data(word, 1, 0, 1)).a, (0, 1, 0))

    def test_two_term_swaps(self):
        word = ReducedWord(A3, (1, 3, 2, 1, 3, 2))
        moved = pl_bijection(BraidMove(0, TWO_TERM), data(word, 4, 1, 0, 0, 2, 0))
        self.assertEqual(moved.a, (1, 4, 0, 0, 2, 0))
        self.assertEqual(moved.word.letters, (3, 1, 2, 1, 3, 2))

    def test_illegal_move(self):
        with self.assertRaises(DomainError):
            pl_bijection(BraidMove(0, TWO_TERM), data(W121, 1, 0, 0))

    def test_involution(self):
        rng = random.Random(11)
        for _ in range(20):
            d = data(REFERENCE, *(rng.randint(0, 3) for _ in range(6)))
            for move in legal_moves(REFERENCE):
                back = pl_bijection(move, pl_bijection(move, d))
                self.assertEqual(back, d)

    def test_transport_identity(self):
        d = data(REFERENCE, 1, 0, 2, 0, 1, 1)
        self.assertEqual(transport(d, REFERENCE), d)

    def test_transport_is_path_independent(self):
        rng = random.Random(12)
        for target in reduced_words(A3):
            d = data(REFERENCE, *(rng.randint(0, 2) for _ in range(6)))
            via_bfs = d
            for move in braid_graph_path(REFERENCE, target):
                via_bfs = pl_bijection(move, via_bfs)
            self.assertEqual(transport(d, target), via_bfs)


class LatticeTests(SimpleTestCase):

    def test_a2_three_term(self):
        report = verify_lattice_move(W121, BraidMove(0, THREE_TERM), (1, 1))
        self.assertTrue(report.passed, report.problems)

    def test_a2_higher_weight(self):
        report = verify_lattice_move(W121, BraidMove(0, THREE_TERM), (2, 2))
        self.assertTrue(report.passed, report.problems)

    def test_two_term(self):
        word = ReducedWord(A3, (1, 3, 2, 1, 3, 2))
        report = verify_lattice_move(word, BraidMove(0, TWO_TERM), (1, 1, 1))
        self.assertTrue(report.passed, report.problems)

    def test_a3_moves(self):
        for move in legal_moves(REFERENCE):
            for nu in ((1, 1, 0), (1, 1, 1), (0, 1, 1)):
                report = verify_lattice_move(REFERENCE, move, nu)
                self.assertTrue(report.passed, report.problems)


class ConvexityTests(SimpleTestCase):

    def test_convex_support(self):
        for word in (REFERENCE, ILLUSTRATION):
            for j in range(6):
                for k in range(j + 1, 6):
                    self.assertEqual(verify_convex_support(word, j, k), [])

    def test_compspan(self):
        move = BraidMove(0, THREE_TERM)
        for nu in ((1, 0), (2, 0), (1, 1), (0, 2)):
            self.assertEqual(verify_compspan(W121, move, nu), [])
        other = apply_braid_move(REFERENCE, legal_moves(REFERENCE)[0])
        self.assertEqual(verify_compspan(other, legal_moves(other)[0], (1, 1, 0)), [])


class SerializerTests(SimpleTestCase):

    def test_read_data(self):
        serializer = LusztigDataSerializer(data={'word': [1, 2, 1], 'a': [1, 0, 1]}, context={'diagram': A2})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), data(W121, 1, 0, 1))

    def test_rejects_partial_word(self):
        serializer = LusztigDataSerializer(data={'word': [1, 2], 'a': [1, 0]}, context={'diagram': A2})
        self.assertFalse(serializer.is_valid())

    def test_expansion_rows(self):
        rows = expansion_rows({data(W121, 1, 0, 1): RatFunc(Q), data(W121, 0, 1, 0): RatFunc(1)})
        self.assertEqual(rows[0]['data'], {'word': [1, 2, 1], 'a': [1, 0, 1]})
        self.assertEqual(rows[1]['coeff'], {'num': {'0': '1'}, 'den': {'0': '1'}})
