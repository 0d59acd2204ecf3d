"""Tests de l'application curves."""

from fractions import Fraction

from django.test import SimpleTestCase

from apps.scalars.models import ParamRational
from apps.scalars.services import evaluate_at

from .exceptions import ConstantIndexError, OutsideParametrizedFamily, UnknownLocus
from .serializers import CurveFormulaSerializer, RaisingMapSerializer
from .services import (
    ab_constants, evaluate_curve, locus_eval, raising_map, truncation_curve, truncation_threshold,
    w4_determinant, w4_scalars,
)


class TruncationCurveTests(SimpleTestCase):

    def test_virasoro_central_charge(self):
        curve = truncation_curve(2, 0)
        self.assertEqual(curve.c, ParamRational.from_expression('13 - 6*psi - 6/psi'))

    def test_sl3_lambda(self):
        curve = truncation_curve(3, 0)
        self.assertEqual(curve.lam, ParamRational.from_expression('-psi/((3*psi - 5)*(5*psi - 3))'))

    def test_threshold(self):
        self.assertEqual(truncation_threshold(1, 1), 5)
        self.assertEqual(truncation_curve(4, 0).threshold, 4)
        self.assertEqual(truncation_threshold(0, 2), 8)

    def test_excluded_pairs(self):
        for n, m in ((1, 0), (0, 0), (1, -1)):
            with self.assertRaises(OutsideParametrizedFamily):
                truncation_threshold(n, m)
        with self.assertRaises(OutsideParametrizedFamily):
            truncation_curve(1, 0)

    def test_virasoro_boundary_has_no_lambda(self):
        self.assertIsNone(truncation_curve(2, 0).lam)
        self.assertEqual(truncation_threshold(2, 0), 2)
        with self.assertRaises(OutsideParametrizedFamily):
            locus_eval('w4_null', 2, 0)

    def test_evaluation(self):
        values = evaluate_curve(2, 0, '2')
        self.assertEqual(values['c'], -2)
        values = evaluate_curve(3, 0, '2', locus='lambda_zero')
        self.assertEqual(values['locus_value'], Fraction(-2, 7))

    def test_serialization(self):
        data = CurveFormulaSerializer(truncation_curve(1, 1)).data
        self.assertEqual(data['threshold'], 5)
        self.assertIn('lambda', data)


class LocusTests(SimpleTestCase):

    def test_sl3_curve_vanishes_identically(self):
        self.assertTrue(locus_eval('sl3_curve', 3, 0).is_zero())

    def test_lambda_zero_on_sl3(self):
        value = locus_eval('lambda_zero', 3, 0)
        self.assertFalse(value.is_zero())
        self.assertEqual(value, truncation_curve(3, 0).lam)

    def test_w4_null_on_sl3(self):
        value = locus_eval('w4_null', 3, 0)
        self.assertFalse(value.is_zero())
        self.assertEqual(evaluate_at(value, {'psi': 2}), Fraction(-363, 7))

    def test_unknown(self):
        with self.assertRaises(UnknownLocus):
            locus_eval('w6_null', 3, 0)


class StructureConstantTests(SimpleTestCase):

    def test_special_values(self):
        self.assertEqual(ab_constants(4, 5)[0], Fraction(2, 3))
        self.assertEqual(ab_constants(4, 4)[1], Fraction(2, 5))
        for j in range(3, 13):
            self.assertEqual(ab_constants(3, j)[0], 1)

    def test_closed_forms_match_special_families(self):
        for j in range(4, 13):
            a, b = ab_constants(4, j)
            self.assertEqual(a, Fraction(4, j + 1))
            self.assertEqual(b, Fraction(12, (j + 1) * (j + 2)))
        for j in range(5, 13):
            self.assertEqual(ab_constants(5, j)[0], Fraction(20, (j + 1) * (j + 2)))

    def test_out_of_range(self):
        with self.assertRaises(IndexError):
            ab_constants(4, 3)
        with self.assertRaises(ConstantIndexError):
            ab_constants(2, 5)


class W4ScalarTests(SimpleTestCase):

    def test_quoted_scalars_are_flagged(self):
        scalars = w4_scalars()
        self.assertTrue(all(not scalar.verified for scalar in scalars))
        by_name = {scalar.name: scalar for scalar in scalars}
        value = evaluate_at(by_name['w4_5_w4'].value, {'c': -2, 'lambda': 7})
        self.assertEqual(value, Fraction(500, 3))

    def test_raising_coefficients_agree_with_constants(self):
        by_name = {scalar.name: scalar for scalar in w4_scalars()}
        self.assertEqual(by_name['w4_1_w6'].value, ParamRational(ab_constants(4, 6)[0]))
        self.assertEqual(by_name['w4_1_w8'].value, ParamRational(ab_constants(4, 8)[0]))

    def test_determinant(self):
        check = w4_determinant()
        self.assertTrue(check.matches)
        self.assertEqual(check.value, ParamRational.from_expression('-9216/5*lambda*(-8 + 22*lambda + 5*lambda*c)'))


class RaisingMapTests(SimpleTestCase):

    def test_base_cases(self):
        first = raising_map(3)
        self.assertEqual(first.domain, ('U^{3,3}_{0,0}',))
        self.assertEqual(first.matrix, ((2,),))
        second = raising_map(4)
        self.assertEqual(second.codomain, ('U^{3,7}_{0,0}', 'U^{5,5}_{0,0}'))
        self.assertEqual(second.matrix, ((Fraction(2, 3),), (1,)))

    def test_injective(self):
        for a in range(3, 12):
            self.assertTrue(raising_map(a).injective)

    def test_serialization(self):
        data = RaisingMapSerializer(raising_map(4)).data
        self.assertEqual(data['matrix'], [['2/3'], ['1']])
        self.assertTrue(data['injective'])
