from django.test import SimpleTestCase, override_settings

from qscalar.exceptions import DomainError
from .models import (
    TWO_TERM, THREE_TERM, BraidMove, DynkinDiagram, ReducedWord,
    apply_braid_move, beta_sequence, braid_graph_path, convexity_violations,
    first_letter_words, kostant_partition, last_letter_words, legal_moves,
    matsumoto_path, reduced_words, replay, sigma,
)
from .serializers import DiagramSerializer, ReducedWordField

A2 = DynkinDiagram.of('A2')
A3 = DynkinDiagram.of('A3')
D4 = DynkinDiagram.of('D4')


class DiagramTests(SimpleTestCase):

    def test_type_strings(self):
        self.assertEqual(DynkinDiagram('e6').rank, 6)
        for bad in ('B2', 'D3', 'E9', 'A0', 'X'):
            with self.assertRaises(DomainError):
                DynkinDiagram(bad)

    def test_cartan_matrix(self):
        self.assertEqual(A3.cartan_matrix, ((2, -1, 0), (-1, 2, -1), (0, -1, 2)))
        self.assertTrue(D4.adjacent(2, 4))
        self.assertFalse(D4.adjacent(3, 4))

    def test_positive_root_counts(self):
        self.assertEqual(A2.num_positive_roots, 3)
        self.assertEqual(A3.num_positive_roots, 6)
        self.assertEqual(D4.num_positive_roots, 12)
        self.assertEqual(DynkinDiagram.of('E6').num_positive_roots, 36)

    def test_roots_have_norm_two(self):
        for root in D4.positive_roots:
            self.assertEqual(D4.pairing(root.coords, root.coords), 2)


class BetaSequenceTests(SimpleTestCase):

    def test_a2(self):
        betas = beta_sequence(ReducedWord(A2, (1, 2, 1)))
        self.assertEqual([b.coords for b in betas], [(1, 0), (1, 1), (0, 1)])

    def test_a3_reference_word(self):
        betas = beta_sequence(ReducedWord.parse(A3, '1,2,3,1,2,1'))
        self.assertEqual(
            [b.coords for b in betas],
            [(1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1), (0, 0, 1)],
        )

    def test_a3_second_word(self):
        betas = beta_sequence(ReducedWord(A3, (3, 1, 2, 1, 3, 2)))
        self.assertEqual(
            [b.coords for b in betas],
            [(0, 0, 1), (1, 0, 0), (1, 1, 1), (0, 1, 1), (1, 1, 0), (0, 1, 0)],
        )

    def test_full_words_enumerate_positive_roots(self):
        for diagram in (A2, A3, D4):
            word = first_letter_words(diagram, 1)
            self.assertEqual(sorted(b.coords for b in word.betas),
                             sorted(r.coords for r in diagram.positive_roots))

    def test_non_reduced_word(self):
        with self.assertRaises(DomainError):
            ReducedWord(A3, (1, 1, 2))
        with self.assertRaises(DomainError):
            ReducedWord(A2, (1, 4))


class BraidMoveTests(SimpleTestCase):

    def test_three_term(self):
        word = apply_braid_move(ReducedWord(A2, (1, 2, 1)), BraidMove(0, THREE_TERM))
        self.assertEqual(word.letters, (2, 1, 2))

    def test_two_term(self):
        word = apply_braid_move(ReducedWord(A3, (1, 3, 2, 1, 3, 2)), BraidMove(0, TWO_TERM))
        self.assertEqual(word.letters, (3, 1, 2, 1, 3, 2))

    def test_illegal_move(self):
        with self.assertRaises(DomainError):
            apply_braid_move(ReducedWord(A2, (1, 2, 1)), BraidMove(0, TWO_TERM))

    def test_three_term_move_swaps_outer_roots(self):
        before = ReducedWord(A3, (3, 1, 2, 1, 3, 2))
        after = apply_braid_move(before, BraidMove(1, THREE_TERM))
        self.assertEqual(after.betas[1], before.betas[3])
        self.assertEqual(after.betas[3], before.betas[1])
        self.assertEqual(after.betas[2], before.betas[2])
        self.assertEqual(after.betas[:1] + after.betas[4:], before.betas[:1] + before.betas[4:])

    def test_moves_are_involutions(self):
        word = ReducedWord(A3, (1, 2, 3, 1, 2, 1))
        for move in legal_moves(word):
            self.assertEqual(apply_braid_move(apply_braid_move(word, move), move), word)


class MatsumotoTests(SimpleTestCase):

    def test_same_word(self):
        word = ReducedWord(A2, (1, 2, 1))
        self.assertEqual(matsumoto_path(word, word), [])

    def test_a2(self):
        path = matsumoto_path(ReducedWord(A2, (1, 2, 1)), ReducedWord(A2, (2, 1, 2)))
        self.assertEqual(path, [BraidMove(0, THREE_TERM)])

    def test_replay_lands_on_every_a3_word(self):
        words = reduced_words(A3)
        self.assertEqual(len(words), 16)
        start = ReducedWord(A3, (1, 2, 3, 1, 2, 1))
        for target in words:
            self.assertEqual(replay(start, matsumoto_path(start, target)), target)

    def test_replay_d4(self):
        source = first_letter_words(D4, 1)
        target = first_letter_words(D4, 4)
        self.assertEqual(replay(source, matsumoto_path(source, target)), target)

    def test_bfs_oracle(self):
        source = ReducedWord(A3, (1, 2, 3, 1, 2, 1))
        target = ReducedWord(A3, (3, 1, 2, 1, 3, 2))
        path = braid_graph_path(source, target)
        self.assertEqual(replay(source, path), target)
        self.assertLessEqual(len(path), len(matsumoto_path(source, target)))

    def test_different_elements(self):
        with self.assertRaises(DomainError):
            matsumoto_path(ReducedWord(A3, (1, 2)), ReducedWord(A3, (2, 1)))


class LongestElementTests(SimpleTestCase):

    def test_first_letter_words(self):
        self.assertEqual(first_letter_words(A2, 1).letters, (1, 2, 1))
        word = first_letter_words(A3, 2)
        self.assertEqual(word.letters[0], 2)
        self.assertTrue(word.is_full())
        for diagram in (A3, D4):
            for i in diagram.nodes:
                self.assertEqual(first_letter_words(diagram, i).betas[0].coords, diagram.unit(i))

    def test_last_letter_words(self):
        for diagram in (A2, A3, D4):
            for i in diagram.nodes:
                word = last_letter_words(diagram, i)
                self.assertTrue(word.is_full())
                self.assertEqual(word.betas[-1].coords, diagram.unit(i))

    def test_sigma(self):
        self.assertEqual(sigma(A3), {1: 3, 2: 2, 3: 1})
        self.assertEqual(sigma(A2), {1: 2, 2: 1})
        self.assertEqual(sigma(D4), {1: 1, 2: 2, 3: 3, 4: 4})

    @override_settings(QUANTUM={'MAX_FULL_RANK': 3})
    def test_rank_gate(self):
        with self.assertRaises(DomainError):
            first_letter_words(D4, 1)

    def test_kostant_partition(self):
        self.assertEqual(kostant_partition(A2, (1, 0)), 1)
        self.assertEqual(kostant_partition(A2, (1, 1)), 2)
        self.assertEqual(kostant_partition(A3, (1, 1, 1)), 4)
        self.assertEqual(kostant_partition(A2, (0, 0)), 1)

    def test_convexity(self):
        for diagram in (A2, A3):
            for word in reduced_words(diagram):
                self.assertEqual(convexity_violations(word, max_coeff=2), [])
        self.assertEqual(convexity_violations(first_letter_words(D4, 2)), [])


class RootSerializerTests(SimpleTestCase):

    def test_word_field(self):
        field = ReducedWordField()
        field._context = {'diagram': A2}
        self.assertEqual(field.to_internal_value('1,2,1').letters, (1, 2, 1))
        self.assertEqual(field.to_representation(ReducedWord(A2, (2, 1, 2))), [2, 1, 2])

    def test_diagram_serializer(self):
        data = DiagramSerializer(A3).data
        self.assertEqual(data['num_positive_roots'], 6)
        self.assertEqual(data['sigma'], {'1': 3, '2': 2, '3': 1})
