import unittest
from fractions import Fraction

import pytest

from arrangement_moduli.polytope import BadParams, Face, LatticePolytope, NotFacet, affine_dim, \
    euler_characteristic, extreme_rays, face_of_hyperplane, hypersimplex, incidence, vertex_subset

TEST_SEGMENT = LatticePolytope(1, ((0,), (1,)))
TEST_SQUARE = LatticePolytope(2, ((0, 0), (1, 0), (0, 1), (1, 1)))


class TestExtremeRays(unittest.TestCase):

    def test_orthant(self):
        rays = extreme_rays([[1, 0], [0, 1]])
        self.assertEqual(sorted(ray for ray, _ in rays), [(0, 1), (1, 0)])
        self.assertEqual({ray: zeros for ray, zeros in rays}, {(1, 0): {1}, (0, 1): {0}})

    def test_redundant_row(self):
        rays = extreme_rays([[1, 0], [0, 1], [1, 1]])
        self.assertEqual(sorted(ray for ray, _ in rays), [(0, 1), (1, 0)])

    def test_cut_corner(self):
        # x >= 0, y >= 0, z >= 0 and x + y >= z
        rays = extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -1]])
        self.assertEqual(sorted(ray for ray, _ in rays), [(0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)])

    def test_zero_sets(self):
        rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -1]]
        rays = dict(extreme_rays(rows))
        self.assertEqual(rays[(0, 1, 1)], {0, 3})
        self.assertEqual(rays[(1, 0, 0)], {1, 2})
        for ray, zeros in rays.items():
            self.assertEqual(zeros, {k for k, row in enumerate(rows) if sum(a * b for a, b in zip(row, ray)) == 0})

    def test_rational_rows(self):
        rays = extreme_rays([[Fraction(1, 2), 0], [Fraction(-1, 3), Fraction(2, 3)]])
        self.assertEqual(sorted(ray for ray, _ in rays), [(0, 1), (2, 1)])

    def test_not_pointed(self):
        with pytest.raises(ValueError):
            extreme_rays([[1, 0]])
        with pytest.raises(ValueError):
            extreme_rays([])


class TestLatticePolytope(unittest.TestCase):

    def test_bad_params(self):
        with pytest.raises(BadParams):
            LatticePolytope(2, ())
        with pytest.raises(BadParams):
            LatticePolytope(2, ((0, 0), (0, 0)))
        with pytest.raises(BadParams):
            LatticePolytope(2, ((0, 0, 1),))
        with pytest.raises(BadParams):
            hypersimplex(0, 4)
        with pytest.raises(BadParams):
            hypersimplex(4, 4)

    def test_square(self):
        self.assertEqual(TEST_SQUARE.dim, 2)
        self.assertEqual(sorted(map(sorted, TEST_SQUARE.facets())), [[0, 1], [0, 2], [1, 3], [2, 3]])
        self.assertEqual(TEST_SQUARE.edges(), [(0, 1), (0, 2), (1, 3), (2, 3)])
        self.assertTrue(TEST_SQUARE.contains((Fraction(1, 2), 1)))
        self.assertFalse(TEST_SQUARE.contains((2, 0)))

    def test_affine_dim(self):
        self.assertEqual(affine_dim([(0, 0)]), 0)
        self.assertEqual(affine_dim([(0, 0), (1, 1), (2, 2)]), 1)
        self.assertEqual(affine_dim(hypersimplex(2, 4).vertices), 3)

    def test_hypersimplex(self):
        octahedron = hypersimplex(2, 4)
        self.assertEqual(octahedron.dim, 3)
        self.assertEqual(len(octahedron.facets()), 8)
        self.assertEqual(len(octahedron.edges()), 12)
        self.assertTrue(octahedron.contains((Fraction(1, 2),) * 4))
        self.assertFalse(octahedron.contains((1, 1, 1, 0)))
        self.assertFalse(octahedron.contains((1, 1, 1, -1)))
        self.assertEqual(len(hypersimplex(2, 5).facets()), 10)
        self.assertEqual(hypersimplex(1, 4).dim, 3)
        self.assertEqual(len(hypersimplex(1, 4).facets()), 4)

    def test_vertex_labels(self):
        self.assertEqual(vertex_subset(2, 4, 0), (0, 1))
        self.assertEqual(vertex_subset(2, 4, 5), (2, 3))
        self.assertEqual(face_of_hyperplane(hypersimplex(2, 4), 0, 0), {3, 4, 5})
        self.assertEqual(face_of_hyperplane(hypersimplex(2, 4), 0, 1), {0, 1, 2})


class TestFacePoset(unittest.TestCase):

    def test_octahedron(self):
        poset = hypersimplex(2, 4).face_poset
        self.assertEqual(len(poset), 27)
        self.assertEqual([len(poset.of_dim(d)) for d in range(4)], [6, 12, 8, 1])
        self.assertEqual(euler_characteristic(poset.faces), 1)
        self.assertTrue(poset.boundary_squared_is_zero())

    def test_segment_orientation(self):
        poset = TEST_SEGMENT.face_poset
        edge = poset.face({0, 1})
        self.assertEqual(incidence(poset, edge, poset.face({1})), 1)
        self.assertEqual(incidence(poset, edge, poset.face({0})), -1)

    def test_not_facet(self):
        poset = TEST_SQUARE.face_poset
        with pytest.raises(NotFacet):
            poset.incidence(poset.face({0, 1, 2, 3}), poset.face({0}))
        with pytest.raises(NotFacet):
            poset.incidence(poset.face({0, 1}), Face(0, frozenset({3})))

    def test_square_boundary(self):
        poset = TEST_SQUARE.face_poset
        square = poset.face({0, 1, 2, 3})
        total = {}
        for edge in poset.covers[square]:
            for vertex in poset.covers[edge]:
                total[vertex] = total.get(vertex, 0) + incidence(poset, square, edge) * incidence(poset, edge, vertex)
        self.assertEqual(set(total.values()), {0})

    def test_four_dimensional(self):
        poset = hypersimplex(2, 5).face_poset
        self.assertEqual(poset.top_dim, 4)
        self.assertEqual(euler_characteristic(poset.faces), 1)
        self.assertTrue(poset.boundary_squared_is_zero())
