"""Tests de l'application scalars."""

import random
from fractions import Fraction

from django.test import SimpleTestCase

from .exceptions import (
    DivisionByZero, MissingAssignment, PoleAtPoint, ScalarParseError, UnknownParameter,
)
from .linalg import change_of_basis, determinant, independent_columns, rank, solve_in_columns
from .models import C, LAMBDA, PSI, ExtScalar, ParamRational
from .services import evaluate_at, format_scalar, normalize, parse_rational


class NormalizeTests(SimpleTestCase):

    def test_sign_and_gcd(self):
        self.assertEqual(normalize((6, -4)), Fraction(-3, 2))

    def test_zero_denominator(self):
        with self.assertRaises(DivisionByZero):
            normalize((1, 0))
        with self.assertRaises(ZeroDivisionError):
            ParamRational(PSI, 0)

    def test_common_factor_cancellation(self):
        value = ParamRational(PSI ** 2 - 1, PSI - 1)
        self.assertEqual(value, ParamRational(PSI + 1))
        self.assertEqual(value.den.as_expr(), 1)

    def test_denominator_sign_is_positive(self):
        value = ParamRational(1, -PSI)
        self.assertEqual(value.den.as_expr(), PSI)
        self.assertEqual(value.num.as_expr(), -1)

    def test_content_is_cleared(self):
        value = ParamRational(PSI / 2 + Fraction(1, 3), PSI)
        self.assertEqual(value.num.as_expr(), 3 * PSI + 2)
        self.assertEqual(value.den.as_expr(), 6 * PSI)

    def test_idempotent(self):
        value = ParamRational(LAMBDA * C - 2, 4 * LAMBDA)
        self.assertEqual(normalize(normalize(value)), normalize(value))

    def test_symbol_square(self):
        n1 = ExtScalar.symbol(1)
        self.assertEqual(n1 * n1, 120)
        self.assertEqual(ExtScalar.symbol(2) * ExtScalar.symbol(2), 362880)

    def test_inverse_symbol(self):
        self.assertEqual(ExtScalar.inverse_symbol(1) * ExtScalar.symbol(1), 1)
        self.assertTrue((ExtScalar.inverse_symbol(1) * ExtScalar.inverse_symbol(1)).is_rational())
        self.assertEqual((ExtScalar.inverse_symbol(1) * ExtScalar.inverse_symbol(1)).to_rational(),
                         Fraction(1, 120))

    def test_mixed_symbols_stay_irrational(self):
        product = ExtScalar.symbol(1) * ExtScalar.symbol(2)
        self.assertFalse(product.is_rational())
        self.assertIsNone(product.to_rational())
        self.assertEqual(format_scalar(product), '1*n1*n2')


class RingAxiomTests(SimpleTestCase):
    """Axiomes d'anneau sur des triplets aléatoires."""

    def setUp(self):
        self.rng = random.Random(7)

    def random_fraction(self):
        return Fraction(self.rng.randint(-20, 20), self.rng.randint(1, 12))

    def random_ext(self):
        terms = {}
        for key in (frozenset(), frozenset([1]), frozenset([2]), frozenset([1, 2])):
            terms[key] = self.random_fraction()
        return ExtScalar(terms)

    def random_param(self):
        coefficients = [self.rng.randint(-3, 3) for _ in range(4)]
        numerator = coefficients[0] + coefficients[1] * PSI + coefficients[2] * C * PSI
        return ParamRational(numerator, PSI + coefficients[3] ** 2 + 1)

    def test_ext_scalar_ring_axioms(self):
        for _ in range(20):
            a, b, c = self.random_ext(), self.random_ext(), self.random_ext()
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual(a + b, b + a)

    def test_param_rational_ring_axioms(self):
        for _ in range(5):
            a, b, c = self.random_param(), self.random_param(), self.random_param()
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)

    def test_ext_agrees_with_rational(self):
        for _ in range(20):
            x, y = self.random_fraction(), self.random_fraction()
            self.assertEqual((ExtScalar.coerce(x) * ExtScalar.coerce(y)).to_rational(), x * y)
            self.assertEqual((ExtScalar.coerce(x) + ExtScalar.coerce(y)).to_rational(), x + y)

    def test_normalize_is_congruence(self):
        for _ in range(10):
            a, b = self.random_param(), self.random_param()
            self.assertEqual(normalize(a * b), normalize(normalize(a) * normalize(b)))


class EvaluateTests(SimpleTestCase):

    def test_simple_point(self):
        self.assertEqual(evaluate_at(ParamRational(PSI, PSI - 1), {'psi': 2}), 2)

    def test_sl3_locus_vanishes(self):
        locus = ParamRational(-8 + 22 * LAMBDA + 5 * LAMBDA * C)
        self.assertEqual(evaluate_at(locus, {'lambda': 1, 'c': Fraction(-14, 5)}), 0)

    def test_virasoro_central_charge(self):
        n, m = 2, 0
        central = ParamRational(
            -(n * PSI - m - n - 1) * (n * PSI - PSI - m - n + 1) * (n * PSI + PSI - m - n),
            (PSI - 1) * PSI,
        )
        self.assertEqual(evaluate_at(central, {'psi': 2}), -2)
        self.assertEqual(central, ParamRational(13 - 6 * PSI - 6 / PSI))

    def test_pole(self):
        with self.assertRaises(PoleAtPoint):
            evaluate_at(ParamRational(PSI, PSI - 1), {'psi': 1})

    def test_missing_assignment(self):
        with self.assertRaises(MissingAssignment):
            evaluate_at(ParamRational(PSI * C), {'psi': 1})

    def test_string_values(self):
        self.assertEqual(evaluate_at(ParamRational(PSI), {'psi': '3/4'}), Fraction(3, 4))


class TextFormTests(SimpleTestCase):

    def test_parse_rational(self):
        self.assertEqual(parse_rational('-6/4'), Fraction(-3, 2))
        self.assertEqual(parse_rational(' 7 '), 7)

    def test_parse_rational_errors(self):
        with self.assertRaises(ScalarParseError):
            parse_rational('3/')
        with self.assertRaises(DivisionByZero):
            parse_rational('1/0')

    def test_format_scalar(self):
        self.assertEqual(format_scalar(Fraction(-3, 2)), '-3/2')
        self.assertEqual(format_scalar(Fraction(4)), '4')
        self.assertEqual(format_scalar(ExtScalar.coerce(Fraction(1, 3))), '1/3')

    def test_from_expression(self):
        value = ParamRational.from_expression('lambda*(2+c)')
        self.assertEqual(value, ParamRational(LAMBDA * (2 + C)))
        self.assertEqual(ParamRational.from_expression('ψ/(ψ-1)'), ParamRational(PSI, PSI - 1))

    def test_from_expression_unknown_symbol(self):
        with self.assertRaises(UnknownParameter):
            ParamRational.from_expression('x + 1')


class LinearAlgebraTests(SimpleTestCase):

    def test_rank(self):
        columns = [{'a': 1, 'b': 2}, {'a': 2, 'b': 4}, {'c': Fraction(1, 2)}]
        self.assertEqual(rank(columns), 2)
        self.assertEqual(independent_columns(columns), [0, 2])

    def test_solve(self):
        columns = [{'a': 1}, {'b': 1}, {'a': 1, 'b': 1}]
        self.assertEqual(solve_in_columns(columns, {'a': 3, 'b': -1}), {0: 3, 1: -1})
        self.assertIsNone(solve_in_columns(columns, {'c': 1}))

    def test_change_of_basis(self):
        source = [{'x': 1}, {'x': 1, 'y': 2}]
        target = [{'y': 1}]
        self.assertEqual(change_of_basis(source, target), [[Fraction(-1, 2), Fraction(1, 2)]])

    def test_determinant(self):
        self.assertEqual(determinant([[1, 2], [3, 4]]), -2)
