from django.test import SimpleTestCase

from qscalar.models import ONE, Q, Q_MINUS_QINV, RatFunc, q_power
from rootsystem.models import DynkinDiagram
from uqminus.models import UMinusElement

from .models import (
    UqElement, act_on_verma, bar, braid_T, braid_T_inv, braid_relation_failures,
    braid_word, defining_relations, derive_inverse_table, equals_zero_generic_verma,
    nonnegative_part, project, verify_commutator_in_k_block, verify_rest_of_triangular,
)
from .serializers import UqElementField

A2 = DynkinDiagram.of('A2')
A3 = DynkinDiagram.of('A3')
D4 = DynkinDiagram.of('D4')


def F(diagram, i):
    return UqElement.F(diagram, i)


def E(diagram, i):
    return UqElement.E(diagram, i)


def K(diagram, i, exp=1):
    return UqElement.K(diagram, i, exp)


def generators(diagram):
    for i in diagram.nodes:
        yield F(diagram, i)
        yield E(diagram, i)


class StraighteningTests(SimpleTestCase):

    def test_e_past_f(self):
        expected = UqElement(A2, {
            ((1,), (0, 0), (1,)): 1,
            ((), (1, 0), ()): RatFunc(ONE, Q_MINUS_QINV),
            ((), (-1, 0), ()): RatFunc(-1, Q_MINUS_QINV),
        })
        self.assertEqual(E(A2, 1) * F(A2, 1), expected)

    def test_k_past_f(self):
        self.assertEqual(K(A2, 1) * F(A2, 1), UqElement.monomial(A2, (1,), (1, 0), (), q_power(-2)))
        self.assertEqual(K(A2, 1) * F(A2, 2), UqElement.monomial(A2, (2,), (1, 0), (), Q))

    def test_non_adjacent_e_and_f_commute(self):
        self.assertEqual(E(A3, 1) * F(A3, 3), UqElement.monomial(A3, (3,), None, (1,)))

    def test_associative(self):
        x = E(A2, 1) * F(A2, 2) + K(A2, 2, -1)
        y = F(A2, 1) * E(A2, 2)
        z = E(A2, 2) * F(A2, 1) * F(A2, 2)
        self.assertTrue(((x * y) * z).equals(x * (y * z)))

    def test_defining_relations_vanish(self):
        for diagram in (A2, A3, D4):
            for name, relation in defining_relations(diagram).items():
                with self.subTest(diagram=str(diagram), relation=name):
                    self.assertTrue(equals_zero_generic_verma(relation))


class ProjectionTests(SimpleTestCase):

    def test_pure_f_block(self):
        x = F(A2, 1) * E(A2, 2) + F(A2, 2)
        self.assertEqual(project(x, (0, 0), (0, 0)), F(A2, 2))
        self.assertEqual(x.pure_f(), UMinusElement.generator(A2, 2))

    def test_root_vector_lies_in_uminus(self):
        image = braid_T(1, F(A2, 2))
        self.assertEqual(project(image, (0, 0), (0, 0)), image)

    def test_t_of_f_has_no_pure_f_part(self):
        self.assertFalse(project(braid_T(1, F(A2, 1)), (0, 0), (0, 0)))

    def test_nonnegative_part(self):
        x = K(A2, 1) * E(A2, 1) + F(A2, 1)
        self.assertEqual(nonnegative_part(x), K(A2, 1) * E(A2, 1))


class VermaTests(SimpleTestCase):

    def test_zero(self):
        self.assertTrue(equals_zero_generic_verma(UqElement.zero(A2)))

    def test_commutator_relation(self):
        x = (E(A2, 1) * F(A2, 1) - F(A2, 1) * E(A2, 1)
             - (K(A2, 1) - K(A2, 1, -1)).scale(RatFunc(ONE, Q_MINUS_QINV)))
        self.assertTrue(equals_zero_generic_verma(x))

    def test_nonzero_elements(self):
        self.assertFalse(equals_zero_generic_verma(F(A2, 1)))
        self.assertFalse(equals_zero_generic_verma(E(A2, 1)))
        self.assertFalse(equals_zero_generic_verma(K(A2, 1) - UqElement.one(A2)))
        self.assertFalse(equals_zero_generic_verma(E(A2, 1) * E(A2, 2) - E(A2, 2) * E(A2, 1)))

    def test_action_on_highest_weight_vector(self):
        action = act_on_verma(K(A2, 1) * F(A2, 2), ())
        self.assertEqual(action, {(1, 0): UMinusElement.word(A2, (2,), Q)})


class BraidOperatorTests(SimpleTestCase):

    def test_generator_table(self):
        self.assertEqual(braid_T(1, F(A2, 2)), UqElement(A2, {
            ((2, 1), (0, 0), ()): 1,
            ((1, 2), (0, 0), ()): -Q,
        }))
        self.assertEqual(braid_T(1, F(A2, 1)), UqElement.monomial(A2, (), (-1, 0), (1,), -1))
        self.assertEqual(braid_T(1, E(A2, 1)), UqElement.monomial(A2, (1,), (1, 0), (), -1))
        self.assertEqual(braid_T(1, F(A3, 3)), F(A3, 3))

    def test_k_reflects(self):
        self.assertEqual(braid_T(1, K(A2, 2)), UqElement.monomial(A2, (), (1, 1), ()))
        self.assertEqual(braid_T(1, K(A2, 1)), K(A2, 1, -1))

    def test_weights_are_reflected(self):
        for x in (F(A3, 2) * F(A3, 3), E(A3, 1) * F(A3, 2), K(A3, 3) * E(A3, 2)):
            for i in A3.nodes:
                self.assertEqual(braid_T(i, x).weight(), A3.reflect(i, x.weight()))

    def test_derived_inverse_on_simple_generators(self):
        table = derive_inverse_table(A2, 1)
        self.assertTrue(table[('F', 1)].equals(UqElement.monomial(A2, (), (1, 0), (1,), -q_power(-2))))
        self.assertTrue(table[('E', 1)].equals(UqElement.monomial(A2, (1,), (-1, 0), (), -q_power(2))))

    def test_inverse_contract(self):
        for diagram in (A2, A3):
            for i in diagram.nodes:
                for g in generators(diagram):
                    with self.subTest(diagram=str(diagram), i=i, g=str(g)):
                        self.assertTrue(braid_T(i, braid_T_inv(i, g)).equals(g))
                        self.assertTrue(braid_T_inv(i, braid_T(i, g)).equals(g))

    def test_inverse_on_cartan_part(self):
        for j in A3.nodes:
            self.assertEqual(braid_T_inv(2, braid_T(2, K(A3, j))), K(A3, j))

    def test_braid_relations(self):
        for diagram in (A2, A3):
            for i in diagram.nodes:
                for j in diagram.nodes:
                    if i < j:
                        with self.subTest(diagram=str(diagram), i=i, j=j):
                            self.assertEqual(braid_relation_failures(diagram, i, j), [])

    def test_braid_relation_d4_branch(self):
        self.assertEqual(braid_relation_failures(D4, 2, 3), [])
        self.assertEqual(braid_relation_failures(D4, 3, 4), [])

    def test_braid_word_order(self):
        x = F(A2, 1)
        self.assertEqual(braid_word((1, 2), x), braid_T(1, braid_T(2, x)))
        self.assertEqual(braid_word((1, 2), x, inverse=True), braid_T_inv(2, braid_T_inv(1, x)))

    def test_automorphism(self):
        x, y = E(A2, 2), F(A2, 1) * F(A2, 2)
        self.assertTrue(braid_T(2, x * y).equals(braid_T(2, x) * braid_T(2, y)))


class BarTests(SimpleTestCase):

    def test_generators(self):
        self.assertEqual(bar(K(A2, 1)), K(A2, 1, -1))
        self.assertEqual(bar(F(A2, 1)), F(A2, 1))
        self.assertEqual(bar(E(A2, 2)), E(A2, 2))

    def test_morphism(self):
        x = E(A2, 1) + K(A2, 2).scale(Q)
        y = F(A2, 1) * F(A2, 2)
        self.assertTrue(bar(x * y).equals(bar(x) * bar(y)))
        self.assertTrue(bar(E(A2, 1) * F(A2, 1)).equals(bar(E(A2, 1)) * bar(F(A2, 1))))


class ElementSerializerTests(SimpleTestCase):

    def test_round_trip(self):
        field = UqElementField()
        field._context = {'diagram': A2}
        x = braid_T(1, F(A2, 1)) + F(A2, 2).scale(Q)
        data = field.to_representation(x)
        self.assertEqual(data[0]['kvec'], [-1, 0])
        self.assertEqual(field.to_internal_value(data), x)


class BlockCheckTests(SimpleTestCase):

    def setUp(self):
        # F_{beta_2} for the word (1, 2, 1) of A2.
        self.root_vector = UMinusElement.word(A2, (2, 1)) - UMinusElement.word(A2, (1, 2), Q)

    def test_commutator_with_e_lands_in_k_block(self):
        self.assertTrue(verify_commutator_in_k_block(1, self.root_vector))
        self.assertTrue(verify_commutator_in_k_block(1, UMinusElement.generator(A2, 2)))

    def test_commutator_check_refutes(self):
        self.assertFalse(verify_commutator_in_k_block(1, UMinusElement.generator(A2, 1)))

    def test_rest_of_triangular(self):
        self.assertTrue(verify_rest_of_triangular((1, 2), self.root_vector))
        self.assertFalse(verify_rest_of_triangular((1,), self.root_vector))
