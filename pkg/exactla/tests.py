import random

from django.test import SimpleTestCase

from qscalar.exceptions import DomainError
from qscalar.models import LaurentPoly, RatFunc, Q, ONE, quantum_integer, q_power

from .models import QMatrix, solve, rank, kernel_basis, independent_columns, inverse, rank_profile_at


def _random_matrix(rng, nrows, ncols):
    rows = []
    for _ in range(nrows):
        rows.append([LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)}) for _ in range(ncols)])
    return QMatrix(rows, cols=ncols)


class SolveTests(SimpleTestCase):

    def test_identity_returns_rhs(self):
        b = [Q, RatFunc(ONE, quantum_integer(2)), 3]
        x = solve(QMatrix.identity(3), b)
        self.assertEqual(x, [RatFunc.coerce(v) for v in b])

    def test_exact_division(self):
        x = solve(QMatrix([[quantum_integer(2)]]), [LaurentPoly({2: 1, 0: 1})])
        self.assertEqual(x, [RatFunc(Q)])

    def test_inconsistent_system(self):
        self.assertIsNone(solve(QMatrix([[1], [1]]), [1, 2]))

    def test_dimension_mismatch(self):
        with self.assertRaises(DomainError):
            solve(QMatrix([[1, 0]]), [1, 2])

    def test_residual_is_zero(self):
        rng = random.Random(3)
        for _ in range(5):
            M = _random_matrix(rng, 4, 3)
            target = [RatFunc(LaurentPoly({rng.randint(-2, 2): 1})) for _ in range(3)]
            b = M.apply(target)
            x = solve(M, b)
            self.assertIsNotNone(x)
            self.assertEqual(M.apply(x), b)


class RankKernelTests(SimpleTestCase):

    def test_zero_matrix(self):
        M = QMatrix.zero(3, 3)
        self.assertEqual(rank(M), 0)
        self.assertEqual(len(kernel_basis(M)), 3)

    def test_dependent_rows(self):
        M = QMatrix([[1, Q], [q_power(-1), 1]])
        self.assertEqual(rank(M), 1)
        (vector,) = kernel_basis(M)
        self.assertEqual(M.apply(vector), [0, 0])

    def test_full_rank(self):
        M = QMatrix([[1, 0], [0, Q]])
        self.assertEqual(rank(M), 2)
        self.assertEqual(kernel_basis(M), [])
        self.assertEqual(independent_columns(M), [0, 1])

    def test_rank_nullity(self):
        rng = random.Random(4)
        for ncols in (2, 3, 5):
            M = _random_matrix(rng, 3, ncols)
            basis = kernel_basis(M)
            self.assertEqual(rank(M) + len(basis), ncols)
            for vector in basis:
                self.assertTrue(all(v.is_zero() for v in M.apply(vector)))

    def test_inverse(self):
        M = QMatrix([[1, Q], [Q, 1]])
        product = [M.apply(col) for col in (inverse(M).column(0), inverse(M).column(1))]
        self.assertEqual(product, [[1, 0], [0, 1]])
        with self.assertRaises(DomainError):
            inverse(QMatrix([[1, Q], [1, Q]]))

    def test_rank_profile_at_specialization(self):
        M = QMatrix([[1, Q, 0], [q_power(-1), 1, 0], [0, 0, quantum_integer(2)]])
        rows, cols = rank_profile_at(M, 3)
        self.assertEqual(rows, [0, 2])
        self.assertEqual(cols, [0, 2])
