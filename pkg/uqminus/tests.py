import random

from django.test import SimpleTestCase, override_settings

from qscalar.exceptions import DomainError
from qscalar.models import ONE, Q, Q_MINUS_QINV, RatFunc, quantum_integer, q_power
from rootsystem.models import DynkinDiagram, kostant_partition, weights_of_height

from .models import (
    UMinusElement, bar, divided_power, eprime, is_zero, kashiwara_decompose,
    kashiwara_etilde, kashiwara_ftilde, kernel_basis_eprime, multiply,
    phi_coordinates, weight_space, words_of_weight,
)
from .serializers import UMinusElementField

A1 = DynkinDiagram.of('A1')
A2 = DynkinDiagram.of('A2')
A3 = DynkinDiagram.of('A3')
D4 = DynkinDiagram.of('D4')


def F(diagram, *letters, coeff=1):
    return UMinusElement.word(diagram, letters, coeff)


def serre(diagram, i, j):
    """F_i^2 F_j + F_j F_i^2 - [2] F_i F_j F_i."""
    return F(diagram, i, i, j) + F(diagram, j, i, i) - F(diagram, i, j, i, coeff=quantum_integer(2))


def random_element(rng, diagram, nu):
    words = words_of_weight(diagram, nu)
    return UMinusElement(diagram, {
        rng.choice(words): q_power(rng.randint(-2, 2)) * rng.randint(-2, 2) for _ in range(3)
    })


class ProductTests(SimpleTestCase):

    def test_unit(self):
        x = F(A2, 1, 2) - F(A2, 2, 1, coeff=Q)
        self.assertEqual(multiply(UMinusElement.one(A2), x), x)
        self.assertEqual(multiply(x, UMinusElement.one(A2)), x)

    def test_generators(self):
        product = UMinusElement.generator(A2, 1) * UMinusElement.generator(A2, 2)
        self.assertEqual(product.terms, {(1, 2): RatFunc(ONE)})

    def test_serre_relation_times_generator(self):
        x = F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)
        lhs = multiply(x, F(A2, 1))
        rhs = F(A2, 2, 1, 1) - F(A2, 1, 2, 1, coeff=Q)
        self.assertTrue(lhs.equals(rhs))

    def test_divided_power(self):
        self.assertEqual(divided_power(A2, 1, 0), UMinusElement.one(A2))
        self.assertEqual(divided_power(A2, 1, 1), F(A2, 1))
        self.assertEqual(divided_power(A2, 1, 2).terms, {(1, 1): RatFunc(ONE, quantum_integer(2))})

    def test_str(self):
        self.assertEqual(str(F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)), 'F2F1 - qF1F2')
        self.assertEqual(str(UMinusElement.zero(A2)), '0')


class BarTests(SimpleTestCase):

    def test_words_are_fixed(self):
        self.assertEqual(bar(F(A2, 1, 2)), F(A2, 1, 2))

    def test_coefficients_are_barred(self):
        x = F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)
        self.assertEqual(bar(x), F(A2, 2, 1) - F(A2, 1, 2, coeff=q_power(-1)))

    def test_involution_and_morphism(self):
        rng = random.Random(5)
        for _ in range(5):
            x = random_element(rng, A2, (1, 1))
            y = random_element(rng, A2, (1, 0))
            self.assertEqual(bar(bar(x)), x)
            self.assertTrue(bar(x * y).equals(bar(x) * bar(y)))


class EprimeTests(SimpleTestCase):

    def test_constant(self):
        self.assertFalse(eprime(1, UMinusElement.one(A2)))

    def test_generator(self):
        self.assertEqual(eprime(1, F(A2, 1)).terms, {(): RatFunc(-1, Q_MINUS_QINV)})
        self.assertFalse(eprime(1, F(A2, 2)))

    def test_kernel_element(self):
        self.assertFalse(eprime(1, F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)))

    def test_lowers_weight(self):
        x = F(A3, 1, 2, 1, 3)
        self.assertEqual(eprime(1, x).weight(), (1, 1, 1))


class ZeroTestTests(SimpleTestCase):

    def test_serre_relations(self):
        for diagram in (A2, A3, D4):
            for i in diagram.nodes:
                for j in diagram.neighbours(i):
                    self.assertTrue(is_zero(serre(diagram, i, j)))

    def test_commuting_relations(self):
        self.assertTrue(is_zero(F(A3, 1, 3) - F(A3, 3, 1)))
        self.assertTrue(is_zero(F(D4, 3, 4) - F(D4, 4, 3)))

    def test_non_relations(self):
        self.assertFalse(is_zero(F(A2, 1, 2) - F(A2, 2, 1)))
        rng = random.Random(6)
        for _ in range(10):
            x = random_element(rng, A2, (2, 1))
            if x.terms:
                # A word combination with a single word is never zero.
                single = UMinusElement(A2, dict([next(iter(x.terms.items()))]))
                self.assertFalse(is_zero(single))

    @override_settings(QUANTUM={'HEIGHT_BOUND': 2})
    def test_height_bound(self):
        with self.assertRaises(DomainError):
            is_zero(F(A2, 1, 2, 1))


class CoordinateTests(SimpleTestCase):

    def test_zero(self):
        self.assertTrue(all(not v for v in phi_coordinates(UMinusElement.zero(A2)).values()))

    def test_distinguishes_words(self):
        self.assertNotEqual(phi_coordinates(F(A2, 1, 2)), phi_coordinates(F(A2, 2, 1)))

    def test_single_letter(self):
        self.assertEqual(phi_coordinates(F(A2, 1)), {(1,): RatFunc(-1, Q_MINUS_QINV)})

    def test_dimensions_match_kostant(self):
        for diagram, top in ((A2, 4), (A3, 3), (D4, 2)):
            for h in range(top + 1):
                for nu in weights_of_height(diagram, h):
                    space = weight_space(diagram, nu)
                    self.assertEqual(len(space.dual_words), kostant_partition(diagram, nu))
                    self.assertEqual(len(space.basis_words), space.dimension)


class KashiwaraTests(SimpleTestCase):

    def test_sl2_divided_power(self):
        (component,) = kashiwara_decompose(1, divided_power(A1, 1, 3))
        self.assertEqual(component[0], 3)
        self.assertTrue(component[1].equals(UMinusElement.one(A1)))

    def test_kernel_element_is_its_own_component(self):
        x = F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)
        (component,) = kashiwara_decompose(1, x)
        self.assertEqual(component[0], 0)
        self.assertTrue(component[1].equals(x))

    def test_generator_string(self):
        (component,) = kashiwara_decompose(1, F(A2, 1, 2))
        self.assertEqual(component[0], 1)
        self.assertTrue(component[1].equals(F(A2, 2)))

    def test_round_trip(self):
        rng = random.Random(7)
        for nu in ((2, 1), (1, 2), (2, 2)):
            x = random_element(rng, A2, nu)
            total = UMinusElement.zero(A2)
            for n, y in kashiwara_decompose(1, x):
                self.assertTrue(is_zero(eprime(1, y)))
                total = total + divided_power(A2, 1, n) * y
            self.assertTrue(total.equals(x))

    def test_kernel_dimension(self):
        for nu in ((1, 1, 0), (1, 1, 1), (2, 1, 1)):
            kernel = kernel_basis_eprime(A3, 1, nu)
            lower = (nu[0] - 1,) + nu[1:]
            self.assertEqual(len(kernel), kostant_partition(A3, nu) - kostant_partition(A3, lower))

    def test_ftilde(self):
        for n in range(4):
            self.assertTrue(kashiwara_ftilde(1, divided_power(A1, 1, n)).equals(divided_power(A1, 1, n + 1)))
        self.assertTrue(kashiwara_ftilde(1, UMinusElement.one(A2)).equals(F(A2, 1)))
        x = F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)
        self.assertTrue(kashiwara_ftilde(1, x).equals(F(A2, 1) * x))

    def test_etilde_inverts_ftilde(self):
        x = F(A2, 1, 2) + F(A2, 2, 1, coeff=Q)
        self.assertTrue(kashiwara_etilde(1, kashiwara_ftilde(1, x)).equals(x))
        self.assertFalse(kashiwara_etilde(1, F(A2, 2)))


class ElementSerializerTests(SimpleTestCase):

    def test_json_form(self):
        field = UMinusElementField()
        field._context = {'diagram': A2}
        x = F(A2, 2, 1) - F(A2, 1, 2, coeff=Q)
        data = field.to_representation(x)
        self.assertEqual(data[0]['word'], [1, 2])
        self.assertEqual(data[0]['coeff'], {'num': {'1': '-1'}, 'den': {'0': '1'}})
        self.assertEqual(field.to_internal_value(data), x)
