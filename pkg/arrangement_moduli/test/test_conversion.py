import unittest
from fractions import Fraction

import pytest

from arrangement_moduli.conversion import convert, format_rational, format_vector, parse_subset_key, subset_key, \
    to_external, to_internal


class TestConverter(unittest.TestCase):

    def test_convert(self):
        # integers
        self.assertEqual(convert(1), Fraction(1))
        self.assertEqual(convert(-1058), Fraction(-1058))

        # strings
        self.assertEqual(convert('3'), Fraction(3))
        self.assertEqual(convert('-2/4'), Fraction(-1, 2))
        self.assertEqual(convert(' 7/3 '), Fraction(7, 3))

    def test_convert_rejects_inexact(self):
        for datum in (1.5, '1.5', '1e3', '', None, True, [1], '1/0', 'one'):
            with pytest.raises(ValueError):
                convert(datum)

    def test_format(self):
        self.assertEqual(format_rational(Fraction(4, 2)), '2')
        self.assertEqual(format_rational(Fraction(-1, 3)), '-1/3')
        self.assertEqual(format_vector([1, Fraction(1, 2)]), ['1', '1/2'])

    def test_indices(self):
        self.assertEqual(to_internal([3, 1]), (0, 2))
        self.assertEqual(to_external((2, 0)), [1, 3])
        self.assertEqual(subset_key((0, 3)), '1,4')
        self.assertEqual(parse_subset_key('4,1', 4), (0, 3))

    def test_bad_indices(self):
        with pytest.raises(ValueError):
            to_internal([0])
        with pytest.raises(ValueError):
            to_internal([5], 4)
        with pytest.raises(ValueError):
            to_internal([1, 1])
        with pytest.raises(ValueError):
            to_internal(['1'])
        with pytest.raises(ValueError):
            parse_subset_key('1;2')
