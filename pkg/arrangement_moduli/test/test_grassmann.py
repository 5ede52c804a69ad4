import random
import unittest
from fractions import Fraction

import pytest

from arrangement_moduli.exactcore import RankDeficient, RationalMatrix, determinant, maximal_minors, \
    pluecker_relations_ok, same_point
from arrangement_moduli.grassmann import Arrangement, OnHyperplane, SamplingFailed, ZeroScale, contains_e, \
    dependent_subsets, gauss_point, gauss_point_kernel, gm_point, gm_translate, is_general_position, \
    random_general_arrangement, random_point_off, torus_act, torus_act_matrix
from arrangement_moduli.presets import NINE_LINES

# F_i = x - a_i y for the points a = 0, 1, 2, 3 of the line
TEST_POINTS_ON_LINE = [[1, 0], [1, -1], [1, -2], [1, -3]]


class TestArrangement(unittest.TestCase):

    def test_shape(self):
        a = Arrangement.from_rows(TEST_POINTS_ON_LINE)
        self.assertEqual((a.r, a.n), (2, 4))

    def test_forms_must_span(self):
        with pytest.raises(RankDeficient):
            Arrangement.from_rows([[1, 2], [2, 4], [3, 6]])

    def test_general_position(self):
        self.assertTrue(is_general_position(Arrangement.from_rows(TEST_POINTS_ON_LINE)))
        self.assertFalse(is_general_position(Arrangement.from_rows(TEST_POINTS_ON_LINE + [[1, 0]])))

    def test_nine_lines(self):
        a = Arrangement.from_rows(NINE_LINES)
        self.assertFalse(is_general_position(a))
        dependent = set(dependent_subsets(a))
        self.assertIn((0, 3, 5), dependent)
        self.assertIn((0, 1, 6), dependent)
        self.assertIn((1, 2, 7), dependent)
        self.assertIn((0, 2, 8), dependent)
        self.assertNotIn((0, 1, 2), dependent)
        self.assertNotIn((6, 7, 8), dependent)
        self.assertEqual(gm_point(a)[(6, 7, 8)], 25)


class TestGelfandMacPherson(unittest.TestCase):

    def test_identity(self):
        a = Arrangement.from_rows([[1, 0], [0, 1]])
        self.assertEqual(gm_point(a).coords, (1,))

    def test_general_position_iff_nonzero(self):
        rng = random.Random(17)
        for _ in range(20):
            rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(5)]
            try:
                a = Arrangement.from_rows(rows)
            except RankDeficient:
                continue
            self.assertEqual(is_general_position(a), all(x != 0 for x in gm_point(a).coords))

    def test_change_of_coordinates(self):
        a = Arrangement.from_rows(TEST_POINTS_ON_LINE)
        g = RationalMatrix.from_rows([[2, 1], [1, 3]])
        moved = Arrangement(2, 4, a.forms @ g)
        scale = determinant(g.to_rows())
        self.assertEqual(gm_point(moved).coords, tuple(scale * x for x in gm_point(a).coords))

    def test_translates_contain_e(self):
        rng = random.Random(23)
        for _ in range(10):
            a = random_general_arrangement(rng.randint(2, 3), rng.randint(4, 6), rng)
            for _ in range(20):
                self.assertTrue(contains_e(gm_translate(a, random_point_off(a, rng))))

    def test_sampling_gives_up(self):
        with pytest.raises(SamplingFailed):
            random_general_arrangement(2, 4, random.Random(1), bound=0)
        with pytest.raises(SamplingFailed):
            # every nonzero point of {-1, 0, 1}^2 lies on one of these lines
            random_point_off(Arrangement.from_rows([[1, 0], [0, 1], [1, 1], [1, -1]]), random.Random(1), bound=1)

    def test_translate_on_line(self):
        a = Arrangement.from_rows(TEST_POINTS_ON_LINE)
        w = gm_translate(a, (5, 1))
        self.assertEqual(w.row(0), tuple(Fraction(1, 5 - x) for x in range(4)))
        self.assertTrue(contains_e(w))

    def test_translate_on_hyperplane(self):
        a = Arrangement.from_rows(TEST_POINTS_ON_LINE)
        with pytest.raises(OnHyperplane):
            gm_translate(a, (0, 1))

    def test_contains_e(self):
        self.assertTrue(contains_e(RationalMatrix.from_rows([[1, 1, 1], [0, 1, 2]])))
        self.assertFalse(contains_e(RationalMatrix.from_rows([[1, 2]])))

    def test_translate_back(self):
        rng = random.Random(29)
        a = random_general_arrangement(3, 5, rng)
        u = random_point_off(a, rng)
        values = a.forms.apply(u)
        back = torus_act_matrix(values, gm_translate(a, u))
        self.assertTrue(same_point(maximal_minors(back), gm_point(a)))


class TestGaussMap(unittest.TestCase):

    def test_two_constructions_agree(self):
        rng = random.Random(31)
        for _ in range(20):
            a = random_general_arrangement(rng.randint(2, 3), rng.randint(4, 6), rng)
            u = random_point_off(a, rng)
            self.assertTrue(same_point(gauss_point(a, u), gauss_point_kernel(a, u)))

    def test_line_coordinates(self):
        a = Arrangement.from_rows(TEST_POINTS_ON_LINE)
        p = gauss_point(a, (5, 1))
        values = [Fraction(1, 5 - x) for x in range(4)]
        expected = tuple(v - values[-1] for v in values[:-1])
        self.assertEqual((p.r, p.n), (1, 3))
        self.assertTrue(p.coords[0] * expected[1] == p.coords[1] * expected[0])
        self.assertTrue(p.coords[0] * expected[2] == p.coords[2] * expected[0])

    def test_injective_on_samples(self):
        rng = random.Random(37)
        a = random_general_arrangement(3, 6, rng)
        points = []
        while len(points) < 6:
            u = random_point_off(a, rng)
            if all(u[0] * v[1] != u[1] * v[0] or u[0] * v[2] != u[2] * v[0] or u[1] * v[2] != u[2] * v[1]
                   for v in points):
                points.append(u)
        images = [gauss_point(a, u) for u in points]
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                self.assertFalse(same_point(images[i], images[j]))


class TestTorusAction(unittest.TestCase):

    def test_identity(self):
        p = gm_point(Arrangement.from_rows(TEST_POINTS_ON_LINE))
        self.assertEqual(torus_act((1, 1, 1, 1), p), p)

    def test_composition(self):
        p = gm_point(Arrangement.from_rows(TEST_POINTS_ON_LINE))
        s, t = (2, 3, 5, 7), (1, -1, 4, 2)
        product = tuple(x * y for x, y in zip(s, t))
        self.assertEqual(torus_act(s, torus_act(t, p)), torus_act(product, p))

    def test_matrix_action_commutes(self):
        rng = random.Random(41)
        for _ in range(10):
            a = random_general_arrangement(3, 6, rng)
            w = a.forms.transpose()
            t = [rng.choice((-1, 1)) * rng.randint(1, 5) for _ in range(6)]
            acted = torus_act(t, maximal_minors(w))
            self.assertEqual(maximal_minors(torus_act_matrix(t, w)), acted)
            self.assertTrue(pluecker_relations_ok(acted))

    def test_zero_scale(self):
        p = gm_point(Arrangement.from_rows(TEST_POINTS_ON_LINE))
        with pytest.raises(ZeroScale):
            torus_act((1, 0, 1, 1), p)
