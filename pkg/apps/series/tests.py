"""Tests de l'application series."""

from fractions import Fraction

from django.test import SimpleTestCase

from apps.freefield.services import make_standard_algebra, wfree_sln

from .exceptions import InvalidOrder, OutOfStableRange
from .models import IntSeries
from .serializers import IntSeriesSerializer
from .services import (
    character, invariant_dimension, nk_formula, sector_dimensions, stable_prefix, stable_profile,
)


class CharacterTests(SimpleTestCase):

    def test_full_character_sl4(self):
        self.assertEqual(character(wfree_sln(4), 'full', 6).weight_list(), [1, 0, 1, 2, 4, 5, 10])

    def test_invariant_character_sl4(self):
        self.assertEqual(character(wfree_sln(4), 'invariant', 6).weight_list(), [1, 0, 1, 1, 3, 3, 7])

    def test_sectors_add_up(self):
        for n in (4, 5, 7):
            dims = sector_dimensions(wfree_sln(n), 14)
            for weight in range(15):
                self.assertEqual(dims['full'][weight],
                                 dims['invariant'][weight] + dims['anti-invariant'][weight])

    def test_invariant_dimension(self):
        self.assertEqual(invariant_dimension(wfree_sln(4), 3), 1)
        self.assertEqual(invariant_dimension(wfree_sln(4), 4), 3)
        self.assertEqual(invariant_dimension(wfree_sln(6), 1), 0)
        self.assertEqual(invariant_dimension(wfree_sln(5), 0), 1)

    def test_half_integer_weights(self):
        series = character(make_standard_algebra('O_odd', 1, 1), 'full', 2)
        self.assertEqual(series.coefficients, [1, 1, 0, 1, 1])
        self.assertEqual(series.at_weight(Fraction(1, 2)), 1)
        self.assertEqual(series.at_weight(1), 0)
        self.assertFalse(series.is_integral_graded())

    def test_negative_order(self):
        with self.assertRaises(InvalidOrder):
            character(wfree_sln(4), 'full', -1)


class IntSeriesTests(SimpleTestCase):

    def test_arithmetic(self):
        one_plus = IntSeries.from_weights([1, 1], 3)
        one_minus = IntSeries.from_weights([1, -1], 3)
        self.assertEqual((one_plus * one_minus).weight_list(), [1, 0, -1, 0])
        self.assertEqual((one_plus + one_minus).weight_list(), [2, 0, 0, 0])
        self.assertEqual(one_plus.truncate(2).order, 1)

    def test_serialization(self):
        data = IntSeriesSerializer(character(wfree_sln(4), 'invariant', 6)).data
        self.assertEqual(data['coefficients'], [1, 0, 1, 1, 3, 3, 7])
        self.assertEqual(data['step'], '1')


class StableCountTests(SimpleTestCase):

    def test_formula(self):
        self.assertEqual([nk_formula(k) for k in range(11, 17)], [2, 7, 4, 9, 5, 10])

    def test_below_threshold(self):
        with self.assertRaises(OutOfStableRange):
            nk_formula(10)

    def test_profile(self):
        self.assertEqual(stable_prefix(), {2: 1, 4: 1, 6: 2, 8: 3, 9: 1, 10: 5})
        self.assertEqual(str(stable_profile(12)), 'W(2,4,6^2,8^3,9,10^5,11^2,12^7)')
