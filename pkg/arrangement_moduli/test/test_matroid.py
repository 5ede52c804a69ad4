import unittest
from itertools import combinations

import pytest

from arrangement_moduli.exactcore import RationalMatrix, subsets
from arrangement_moduli.matroid import InvalidMatroid, Matroid, dual, edge_directions, is_basis_family, \
    indicator, is_connected, is_matroid_subpolytope, matroid_from_matrix, polytope_of, subset_rank
from arrangement_moduli.polytope import affine_dim, hypersimplex
from arrangement_moduli.presets import NINE_LINES


def all_matroids(n, r):
    vertices = subsets(n, r)
    for size in range(1, len(vertices) + 1):
        for family in combinations(vertices, size):
            if is_basis_family(n, r, family):
                yield Matroid.from_bases(n, r, family)


class TestBasisFamilies(unittest.TestCase):

    def test_uniform(self):
        self.assertTrue(is_basis_family(4, 2, subsets(4, 2)))
        self.assertEqual(len(Matroid.uniform(2, 4).bases), 6)

    def test_exchange_failure(self):
        self.assertFalse(is_basis_family(4, 2, [(0, 1), (2, 3)]))
        with pytest.raises(InvalidMatroid):
            Matroid.from_bases(4, 2, [(0, 1), (2, 3)])

    def test_malformed(self):
        self.assertFalse(is_basis_family(4, 2, []))
        self.assertFalse(is_basis_family(4, 2, [(0, 4)]))
        self.assertFalse(is_basis_family(4, 2, [(0, 1, 2)]))

    def test_order_does_not_matter(self):
        m = Matroid.from_bases(4, 2, [(1, 0), (2, 0), (0, 3)])
        self.assertEqual(m.sorted_bases(), [(0, 1), (0, 2), (0, 3)])


class TestMatroidOperations(unittest.TestCase):

    def test_matroid_of_matrix(self):
        m = matroid_from_matrix(RationalMatrix.from_rows([[1, 0, 1, 1], [0, 1, 1, 2]]))
        self.assertEqual(m, Matroid.uniform(2, 4))

    def test_nine_lines(self):
        m = matroid_from_matrix(RationalMatrix.from_rows(NINE_LINES).transpose())
        self.assertEqual((m.r, m.n), (3, 9))
        self.assertNotIn((0, 3, 4), m.bases)
        self.assertIn((6, 7, 8), m.bases)
        self.assertEqual(subset_rank(m, (0, 3)), 1)
        self.assertEqual(subset_rank(m, (0, 1, 6)), 2)
        self.assertTrue(is_connected(m))

    def test_coloop_disconnects(self):
        m = matroid_from_matrix(RationalMatrix.from_rows([[1, 0, 0, 0], [0, 1, 1, 1]]))
        self.assertEqual(m.sorted_bases(), [(0, 1), (0, 2), (0, 3)])
        self.assertFalse(is_connected(m))
        self.assertFalse(is_connected(dual(m)))

    def test_uniform_connected(self):
        for r, n in ((2, 4), (2, 5), (3, 6)):
            self.assertTrue(is_connected(Matroid.uniform(r, n)))

    def test_dual(self):
        self.assertEqual(dual(Matroid.uniform(2, 5)), Matroid.uniform(3, 5))
        m = Matroid.from_bases(4, 2, [(0, 1), (0, 2), (0, 3)])
        self.assertEqual(dual(m).sorted_bases(), [(1, 2), (1, 3), (2, 3)])
        self.assertEqual(dual(dual(m)), m)


class TestMatroidPolytopes(unittest.TestCase):

    def test_uniform_polytope_is_hypersimplex(self):
        self.assertEqual(polytope_of(Matroid.uniform(2, 4)), hypersimplex(2, 4))

    def test_edges_are_roots(self):
        self.assertEqual(edge_directions(2, 4, subsets(4, 2)), [])
        self.assertEqual(edge_directions(2, 4, [(0, 1), (2, 3)]), [(1, 1, -1, -1)])

    def test_subpolytopes_of_octahedron(self):
        vertices = subsets(4, 2)
        matroids = 0
        for size in range(1, len(vertices) + 1):
            for family in combinations(vertices, size):
                if is_matroid_subpolytope(2, 4, family):
                    matroids += 1
        self.assertGreater(matroids, len(vertices))
        self.assertTrue(is_matroid_subpolytope(2, 4, vertices))
        self.assertFalse(is_matroid_subpolytope(2, 4, [(0, 1), (2, 3)]))

    def test_empty_family(self):
        self.assertFalse(is_matroid_subpolytope(2, 4, []))

    @pytest.mark.slow
    def test_exchange_agrees_with_edges_on_every_family(self):
        for r, n in ((2, 4), (2, 5)):
            vertices = subsets(n, r)
            for size in range(1, len(vertices) + 1):
                for family in combinations(vertices, size):
                    self.assertEqual(is_basis_family(n, r, family), not edge_directions(r, n, family), family)

    def test_connected_iff_full_dimensional(self):
        for n in range(2, 6):
            for r in range(1, n):
                for m in all_matroids(n, r):
                    dim = affine_dim([indicator(n, b) for b in m.sorted_bases()])
                    self.assertEqual(is_connected(m), dim == n - 1, m.sorted_bases())
                    self.assertEqual(is_connected(dual(m)), is_connected(m))
