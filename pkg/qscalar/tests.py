from fractions import Fraction
import random

from django.test import SimpleTestCase

from .exceptions import DomainError
from .models import (
    LaurentPoly, RatFunc, Q, ONE, ZERO, Q_MINUS_QINV,
    quantum_integer, quantum_factorial, bar_scalar, regular_at_zero,
    value_at_zero, split_antisymmetric, q_power,
)
from .serializers import LaurentPolyField, RatFuncField


def _random_poly(rng, span=4, terms=4):
    return LaurentPoly({rng.randint(-span, span): rng.randint(-5, 5) for _ in range(terms)})


class LaurentPolyTests(SimpleTestCase):

    def test_zero_coefficients_are_pruned(self):
        p = LaurentPoly({0: 1, 2: 0, -1: 3})
        self.assertEqual(p.coeffs, {0: 1, -1: 3})
        self.assertTrue((Q - Q).is_zero())

    def test_non_integral_coefficient(self):
        with self.assertRaises(DomainError):
            LaurentPoly({0: Fraction(1, 2)})
        self.assertEqual(LaurentPoly({0: Fraction(4, 2), 1: Fraction(0, 3)}), LaurentPoly({0: 2}))

    def test_arithmetic(self):
        self.assertEqual((Q + 1) * (Q - 1), LaurentPoly({2: 1, 0: -1}))
        self.assertEqual(Q ** 3, q_power(3))
        self.assertEqual(Q ** -2, q_power(-2))
        self.assertEqual(2 - Q, LaurentPoly({0: 2, 1: -1}))

    def test_str(self):
        self.assertEqual(str(quantum_integer(3)), 'q^2 + 1 + q^-2')
        self.assertEqual(str(Q_MINUS_QINV), 'q - q^-1')
        self.assertEqual(str(ZERO), '0')
        self.assertEqual(str(LaurentPoly({1: -3, 0: 2})), '-3q + 2')

    def test_exquo(self):
        product = quantum_integer(2) * q_power(1)
        self.assertEqual(LaurentPoly({2: 1, 0: 1}).exquo(quantum_integer(2)), Q)
        self.assertEqual(product.exquo(Q), quantum_integer(2))
        with self.assertRaises(DomainError):
            Q.exquo(quantum_integer(2))

    def test_bar_is_multiplicative_involution(self):
        rng = random.Random(0)
        for _ in range(20):
            a, b = _random_poly(rng), _random_poly(rng)
            self.assertEqual((a * b).bar(), a.bar() * b.bar())
            self.assertEqual(a.bar().bar(), a)


class RatFuncTests(SimpleTestCase):

    def test_reduction_is_canonical(self):
        x = RatFunc(LaurentPoly({2: 1, 0: -1}), Q - 1)
        self.assertTrue(x.is_laurent())
        self.assertEqual(x.num, Q + 1)
        self.assertEqual(RatFunc(ONE, -quantum_integer(2)), RatFunc(-1, quantum_integer(2)))
        self.assertEqual(RatFunc(Q, q_power(3)), RatFunc(q_power(-2)))

    def test_unit_denominator_is_laurent(self):
        self.assertTrue(RatFunc(Q + 1, -q_power(4)).is_laurent())
        self.assertFalse(RatFunc(ONE, Q + 1).is_laurent())

    def test_agrees_with_laurent_arithmetic(self):
        rng = random.Random(1)
        for _ in range(20):
            a, b = _random_poly(rng), _random_poly(rng)
            self.assertEqual(RatFunc(a) * RatFunc(b), RatFunc(a * b))
            self.assertEqual(RatFunc(a) + RatFunc(b), RatFunc(a + b))
            if not b.is_zero():
                self.assertEqual((RatFunc(a) / b) * b, RatFunc(a))

    def test_field_operations(self):
        x = RatFunc(ONE, quantum_integer(2))
        self.assertEqual(x * quantum_integer(2), 1)
        self.assertEqual(x + x, RatFunc(2, quantum_integer(2)))
        self.assertEqual(x - x, 0)


class QuantumNumberTests(SimpleTestCase):

    def test_quantum_integer(self):
        self.assertEqual(quantum_integer(1), ONE)
        self.assertEqual(quantum_integer(2), LaurentPoly({1: 1, -1: 1}))
        self.assertEqual(quantum_integer(3), LaurentPoly({2: 1, 0: 1, -2: 1}))
        with self.assertRaises(DomainError):
            quantum_integer(0)

    def test_products_are_balanced(self):
        for n in range(1, 5):
            for m in range(1, 5):
                p = quantum_integer(n) * quantum_integer(m)
                self.assertEqual(p.bar(), p)

    def test_quantum_factorial(self):
        self.assertEqual(quantum_factorial(0), ONE)
        self.assertEqual(quantum_factorial(3), quantum_integer(2) * quantum_integer(3))

    def test_bar_scalar(self):
        self.assertEqual(bar_scalar(RatFunc(Q)), RatFunc(q_power(-1)))
        self.assertEqual(bar_scalar(quantum_integer(4)), quantum_integer(4))
        self.assertEqual(bar_scalar(Q_MINUS_QINV), -Q_MINUS_QINV)

    def test_regularity_at_zero(self):
        x = RatFunc(Q, Q + 1)
        self.assertTrue(regular_at_zero(x))
        self.assertEqual(value_at_zero(x), 0)
        y = RatFunc(ONE, quantum_integer(2))
        self.assertTrue(regular_at_zero(y))
        self.assertEqual(value_at_zero(y), 0)
        self.assertFalse(regular_at_zero(q_power(-1)))
        with self.assertRaises(DomainError):
            value_at_zero(q_power(-1))
        self.assertEqual(value_at_zero(RatFunc(2, Q + 3)), Fraction(2, 3))

    def test_split_antisymmetric(self):
        self.assertEqual(split_antisymmetric(Q_MINUS_QINV), ONE)
        self.assertEqual(split_antisymmetric(ZERO), ZERO)
        self.assertEqual(split_antisymmetric(q_power(3) - q_power(-3)), q_power(2))
        with self.assertRaises(DomainError):
            split_antisymmetric(Q + q_power(-1))

    def test_split_antisymmetric_round_trip(self):
        rng = random.Random(2)
        for _ in range(20):
            f = LaurentPoly({rng.randint(0, 4): rng.randint(-3, 3) for _ in range(3)})
            p = Q * f - q_power(-1) * f.bar()
            self.assertEqual(split_antisymmetric(p), f)


class ScalarFieldTests(SimpleTestCase):

    def test_laurent_json(self):
        field = LaurentPolyField()
        data = field.to_representation(quantum_integer(2))
        self.assertEqual(data, {'-1': '1', '1': '1'})
        self.assertEqual(field.to_internal_value(data), quantum_integer(2))

    def test_ratfunc_json(self):
        field = RatFuncField()
        x = RatFunc(ONE, quantum_integer(2))
        data = field.to_representation(x)
        self.assertEqual(data['num'], {'1': '1'})
        self.assertEqual(field.to_internal_value(data), x)
