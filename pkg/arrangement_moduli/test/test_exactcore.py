import random
import unittest
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from arrangement_moduli.exactcore import (PlueckerVector, RankDeficient, RationalMatrix, determinant,
                                          maximal_minors, minor, nullspace, pluecker_relations_ok, primitive, rank,
                                          row_reduce, same_point, subset_index, subsets)

TEST_PLUECKER_MATRIX = [[1, 0, 1, 1], [0, 1, 1, 2]]


def random_matrix(rng, rows, cols, bound=9):
    return RationalMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


class TestRank(unittest.TestCase):

    def test_identity(self):
        self.assertEqual(rank(RationalMatrix.identity(3)), 3)

    def test_proportional_rows(self):
        self.assertEqual(rank([[1, 2], [2, 4]]), 1)

    def test_empty(self):
        self.assertEqual(rank([]), 0)

    def test_rational_entries(self):
        self.assertEqual(rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]), 1)

    def test_agrees_with_sympy(self):
        rng = random.Random(7)
        for _ in range(20):
            m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), bound=2)
            self.assertEqual(rank(m), sympy.Matrix([[int(x) for x in row] for row in m.to_rows()]).rank())

    def test_transpose_and_row_operations(self):
        rng = random.Random(11)
        for _ in range(20):
            m = random_matrix(rng, 3, 5, bound=3)
            self.assertEqual(rank(m), rank(m.transpose()))
            rows = m.to_rows()
            rows[0] = [a + 3 * b for a, b in zip(rows[0], rows[1])]
            self.assertEqual(rank(m), rank(rows))


class TestDeterminantAndMinors(unittest.TestCase):

    def test_determinant(self):
        self.assertEqual(determinant([[1, 1], [1, 2]]), 1)
        self.assertEqual(determinant([[0, 1], [1, 0]]), -1)
        self.assertEqual(determinant([[2, 4], [1, 2]]), 0)
        self.assertEqual(determinant([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]), Fraction(1, 3))

    def test_determinant_needs_square(self):
        with pytest.raises(ValueError):
            determinant([[1, 2, 3], [4, 5, 6]])

    def test_determinant_agrees_with_sympy(self):
        rng = random.Random(3)
        for size in range(1, 6):
            m = random_matrix(rng, size, size)
            expected = sympy.Matrix([[int(x) for x in row] for row in m.to_rows()]).det()
            self.assertEqual(determinant(m), Fraction(int(expected)))

    def test_minor(self):
        m = RationalMatrix.identity(3)
        self.assertEqual(minor(m, [0, 1], [0, 1]), 1)
        m = RationalMatrix.from_rows([[5, 7], [1, 2]])
        self.assertEqual(minor(m, [0], [0]), 5)
        self.assertEqual(minor(RationalMatrix.from_rows([[1, 1], [1, 2]]), [0, 1], [0, 1]), 1)

    def test_minor_out_of_range(self):
        m = RationalMatrix.identity(2)
        with pytest.raises(IndexError):
            minor(m, [0, 2], [0, 1])
        with pytest.raises(IndexError):
            minor(m, [0, 1, 1], [0, 1, 1])


class TestMatrixHelpers(unittest.TestCase):

    def test_nullspace(self):
        basis = nullspace([[1, 1, 1]])
        self.assertEqual(len(basis), 2)
        for vector in basis:
            self.assertEqual(sum(vector), 0)

    def test_row_reduce(self):
        rows, pivots = row_reduce([[2, 4], [1, 3]])
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(rows, [[1, 0], [0, 1]])

    def test_nullspace_is_kernel(self):
        rng = random.Random(17)
        for _ in range(20):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), bound=3)
            basis = nullspace(m)
            self.assertEqual(len(basis), m.cols - rank(m))
            for vector in basis:
                self.assertTrue(all(x == 0 for x in m.apply(vector)))
                self.assertTrue(all(isinstance(x, Fraction) for x in vector))

    def test_row_reduce_pivots(self):
        rng = random.Random(19)
        for _ in range(20):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), bound=3)
            rows, pivots = row_reduce(m)
            self.assertEqual(len(pivots), rank(m))
            self.assertEqual(len(rows), len(pivots))
            for row, p in zip(rows, pivots):
                self.assertEqual(row[p], 1)
        self.assertEqual(row_reduce([]), ([], []))

    def test_primitive(self):
        self.assertEqual(primitive([Fraction(1, 2), Fraction(3, 4)]), (2, 3))
        self.assertEqual(primitive([0, -4, 6]), (0, -2, 3))
        self.assertEqual(primitive([0, 0]), (0, 0))

    def test_product_and_transpose(self):
        m = RationalMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual((m @ RationalMatrix.identity(2)), m)
        self.assertEqual(m.transpose().to_rows(), [[1, 3], [2, 4]])
        self.assertEqual(m.apply([1, 1]), (3, 7))

    def test_ragged_rows(self):
        with pytest.raises(ValueError):
            RationalMatrix.from_rows([[1, 2], [3]])

    def test_subsets_are_lexicographic(self):
        self.assertEqual(subsets(4, 2), ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
        self.assertEqual(subset_index(4, 2)[(1, 3)], 4)


class TestPluecker(unittest.TestCase):

    def test_maximal_minors(self):
        p = maximal_minors(RationalMatrix.from_rows(TEST_PLUECKER_MATRIX))
        self.assertEqual(p.coords, (1, 1, 2, -1, -1, 1))

    def test_identity(self):
        p = maximal_minors(RationalMatrix.identity(2))
        self.assertEqual(p.coords, (1,))

    def test_row_scaling(self):
        m = RationalMatrix.from_rows(TEST_PLUECKER_MATRIX)
        scaled = RationalMatrix.from_rows([[3 * x for x in TEST_PLUECKER_MATRIX[0]], TEST_PLUECKER_MATRIX[1]])
        self.assertEqual(maximal_minors(scaled).coords, tuple(3 * x for x in maximal_minors(m).coords))
        self.assertTrue(same_point(maximal_minors(scaled), maximal_minors(m)))

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            maximal_minors(RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6]]))

    def test_minor_expansion_oracle(self):
        rng = random.Random(5)
        for r, n in ((2, 5), (3, 6)):
            m = random_matrix(rng, r, n)
            while rank(m) < r:
                m = random_matrix(rng, r, n)
            p = maximal_minors(m)
            for s in combinations(range(n), r):
                expected = sympy.Matrix([[int(m[i, j]) for j in s] for i in range(r)]).det()
                self.assertEqual(p[s], Fraction(int(expected)))

    def test_relations_hold_on_minors(self):
        rng = random.Random(13)
        for _ in range(50):
            r = rng.randint(2, 3)
            m = random_matrix(rng, r, rng.randint(r + 2, 6))
            if rank(m) < r:
                continue
            p = maximal_minors(m)
            self.assertTrue(pluecker_relations_ok(p))
            self.assertTrue(pluecker_relations_ok(p, full=True))

    def test_coordinate_subspace(self):
        p = PlueckerVector(2, 4, (1, 0, 0, 0, 0, 0))
        self.assertTrue(pluecker_relations_ok(p))

    def test_relation_fails(self):
        p = PlueckerVector(2, 4, (1, 0, 0, 0, 0, 1))
        self.assertFalse(pluecker_relations_ok(p))
        self.assertFalse(pluecker_relations_ok(p, full=True))

    def test_alternating_value(self):
        p = maximal_minors(RationalMatrix.from_rows(TEST_PLUECKER_MATRIX))
        self.assertEqual(p.value((1, 0)), -p[(0, 1)])
        self.assertEqual(p.value((2, 2)), 0)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            PlueckerVector(2, 4, (0,) * 6)
