"""Tests de l'application orbifold."""

import random
from fractions import Fraction

from django.test import SimpleTestCase

from apps.fock.models import FieldElement, canonicalize
from apps.fock.services import derivative, derivative_power, generator, normal_order, nth_product
from apps.freefield.exceptions import UnknownGenerator
from apps.freefield.services import wfree_sln

from .exceptions import InvalidUIndex, TypeStringError, UnsupportedCatalog
from .models import ANTI_INVARIANT, INVARIANT, UIndex
from .serializers import CatalogSerializer, SpanRewriteSerializer
from .services import (
    U, coset_catalog, custom_catalog, generator_catalog, instantiate, parse_type_string, project_sector,
    rewrite_spans, theta, type_string,
)


def random_element(rng, algebra, size=3):
    result = FieldElement(algebra)
    for _step in range(size):
        legs = [(rng.randrange(algebra.size), rng.randint(0, 2)) for _ in range(rng.randint(1, 3))]
        _sign, monomial = canonicalize(legs, algebra.odd_flags)
        result = result + FieldElement.from_monomial(algebra, monomial, Fraction(rng.randint(1, 5)))
    return result


class ThetaTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(5)

    def test_generators(self):
        w3 = generator(self.algebra, 'W3')
        self.assertEqual(theta(w3), -w3)
        self.assertEqual(theta(generator(self.algebra, 'L')), generator(self.algebra, 'L'))

    def test_quadratic_fields(self):
        self.assertEqual(theta(U(1, 1, 0, 0, self.algebra)), U(1, 1, 0, 0, self.algebra))
        lw3 = normal_order(generator(self.algebra, 'L'), generator(self.algebra, 'W3'))
        self.assertEqual(theta(lw3), -lw3)

    def test_automorphism(self):
        rng = random.Random(11)
        for _trial in range(15):
            a, b = random_element(rng, self.algebra), random_element(rng, self.algebra)
            self.assertEqual(theta(theta(a)), a)
            for n in (-1, 0, 1, 3):
                self.assertEqual(theta(nth_product(a, n, b)), nth_product(theta(a), n, theta(b)))

    def test_sector_projection(self):
        x = generator(self.algebra, 'W3') + generator(self.algebra, 'W4')
        self.assertEqual(project_sector(x, INVARIANT), generator(self.algebra, 'W4'))
        self.assertEqual(project_sector(x, ANTI_INVARIANT), generator(self.algebra, 'W3'))


class UFieldTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(5)

    def test_first_derivative_rewrite(self):
        self.assertEqual(U(1, 1, 0, 1, self.algebra),
                         derivative(U(1, 1, 0, 0, self.algebra)) / 2)

    def test_second_derivative_rewrite(self):
        expected = (-U(1, 1, 0, 2, self.algebra)
                    + derivative_power(U(1, 1, 0, 0, self.algebra), 2) / 2)
        self.assertEqual(U(1, 1, 1, 1, self.algebra), expected)

    def test_weight(self):
        self.assertEqual(UIndex(1, 2, 2, 1).weight, 11)
        self.assertEqual(U(1, 2, 2, 1, self.algebra).weights2(), {22})

    def test_invalid_index(self):
        with self.assertRaises(InvalidUIndex):
            UIndex(2, 1)
        with self.assertRaises(InvalidUIndex):
            UIndex(1, 1, -1, 0)

    def test_missing_flavor(self):
        with self.assertRaises(UnknownGenerator):
            U(1, 2, 0, 0, wfree_sln(4))


class RewriteSpanTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(5)

    def test_cross_flavor_families(self):
        rewrite = rewrite_spans(1, 2, 1, self.algebra)
        self.assertEqual(rewrite.dimension, 2)
        self.assertEqual([family.rank for family in rewrite.families], [2, 2, 2])
        self.assertEqual(rewrite.family('derivative').labels,
                         ('U^{3,5}_{0,1}', 'D^1 U^{3,5}_{0,0}'))
        self.assertIn(('mixed', 'derivative-swapped'), rewrite.matrices)

    def test_even_square_family(self):
        rewrite = rewrite_spans(1, 1, 0, self.algebra)
        self.assertEqual(rewrite.matrices[('derivative', 'mixed')], [[1]])

    def test_odd_square_family(self):
        rewrite = rewrite_spans(1, 1, 1, self.algebra)
        self.assertEqual(rewrite.dimension, 1)
        self.assertEqual(rewrite.matrices[('derivative', 'mixed')][0], [Fraction(1, 2)])
        self.assertFalse(rewrite.family('mixed').is_basis)

    def test_larger_spans(self):
        for i, j, m in ((1, 2, 4), (1, 1, 4), (2, 2, 3)):
            rewrite = rewrite_spans(i, j, m, self.algebra)
            self.assertEqual(rewrite.weight, 2 * i + 2 * j + m + 2)

    def test_serialization(self):
        data = SpanRewriteSerializer(rewrite_spans(1, 1, 1, self.algebra)).data
        self.assertEqual(data['dimension'], 1)
        self.assertEqual(data['matrices'][0]['rows'], [['1/2'], ['1/2']])


class CatalogTests(SimpleTestCase):

    def test_strong_free_sl4(self):
        catalog = generator_catalog(4, 'strong-free')
        self.assertEqual(catalog.labels(), ['L', 'W4', 'U^{3,3}_{0,0}', 'U^{3,3}_{0,2}',
                                            'U^{3,3}_{0,4}', 'U^{3,3}_{0,6}'])
        self.assertEqual(catalog.weights(), [2, 4, 6, 8, 10, 12])

    def test_strong_free_types(self):
        self.assertEqual(type_string(_counts(generator_catalog(5, 'strong-free'))),
                         'W(2,4,6,8^2,9,10^3,11,12^3,13,14^2)')
        self.assertEqual(type_string(_counts(generator_catalog(6, 'strong-free'))),
                         'W(2,4,6^2,8^2,9,10^3,11,12^3,13,14^2)')

    def test_weak_free_sl5(self):
        catalog = generator_catalog(5, 'weak-free')
        self.assertEqual(set(catalog.labels()), {'L', 'W4', 'U^{3,3}_{0,0}', 'U^{3,5}_{0,0}'})
        self.assertEqual(catalog.weights(), [2, 4, 6, 8])

    def test_weak_free_entries_instantiate(self):
        for n in (4, 6, 7):
            catalog = generator_catalog(n, 'weak-free')
            for entry, element in instantiate(catalog):
                self.assertEqual(theta(element), element)
                self.assertEqual(element.weights2(), {2 * entry.weight})
        stable = generator_catalog('stable', 'weak-free', bound=10)
        self.assertIn('U^{3,7}_{0,0}', stable.labels())

    def test_minimal_sl7(self):
        catalog = generator_catalog(7, 'minimal-sl7-free')
        generic = [entry for entry in catalog.generic() if entry.weight == 16]
        self.assertEqual([entry.label for entry in generic], ['U^{7,7}_{0,2}'])
        extras = {entry.label for entry in catalog if entry.free_limit_only}
        self.assertEqual(extras, {'U^{3,7}_{0,6}', 'U^{5,7}_{0,4}', 'U^{5,7}_{0,5}', 'U^{7,7}_{0,4}'})
        self.assertEqual(type_string(_counts(catalog, generic_only=True)),
                         'W(2,4,6^2,8^2,9,10^4,11^2,12^5,13^3,14^5,15^2,16)')

    def test_stable_prefix(self):
        catalog = generator_catalog('stable', 'strong-free', bound=10)
        self.assertEqual(type_string(_counts(catalog)), 'W(2,4,6^2,8^3,9,10^5)')

    def test_long_catalog(self):
        catalog = generator_catalog(5, 'long', bound=10)
        self.assertEqual(set(catalog.labels()), {
            'L', 'W4', 'U^{3,3}_{0,0}', 'U^{3,3}_{0,2}', 'U^{3,3}_{0,4}', 'U^{5,5}_{0,0}',
            'U^{3,5}_{0,0}', 'U^{3,5}_{0,1}', 'U^{3,5}_{0,2}',
        })

    def test_coset_reuse(self):
        catalog = coset_catalog(1, 1, 12)
        self.assertEqual(catalog.n, 5)
        self.assertEqual(catalog.labels(), generator_catalog(5, 'long', 12).labels())

    def test_entries_are_invariant_with_advertised_weight(self):
        for entry, element in instantiate(generator_catalog(6, 'strong-free')):
            self.assertEqual(theta(element), element)
            self.assertEqual(element.weights2(), {2 * entry.weight})

    def test_custom_catalog(self):
        catalog = custom_catalog(4, ['L', 'W4', UIndex(1, 1)])
        self.assertEqual(catalog.kind, 'custom')
        self.assertEqual(catalog.weights(), [2, 4, 6])
        self.assertIn('U^{3,3}_{0,0}', catalog.labels())

    def test_unsupported(self):
        with self.assertRaises(UnsupportedCatalog):
            generator_catalog(6, 'minimal-sl7-free')
        with self.assertRaises(UnsupportedCatalog):
            generator_catalog(3, 'strong-free')
        with self.assertRaises(UnsupportedCatalog):
            generator_catalog(5, 'tiny')

    def test_serialization(self):
        data = CatalogSerializer(generator_catalog(4, 'strong-free')).data
        self.assertEqual(data['schema'], '1')
        self.assertEqual(data['n'], 4)
        self.assertEqual(dict(data['entries'][2]), {'label': 'U^{3,3}_{0,0}', 'weight': '6',
                                                    'recipe': 'U(1,1,0,0)',
                                                    'free_limit_only': False})
        self.assertEqual(data['type'], 'W(2,4,6,8,10,12)')


class TypeStringTests(SimpleTestCase):

    def test_round_trip(self):
        text = 'W(2,4,6^2,8^3,9,10^5)'
        self.assertEqual(parse_type_string(text), {2: 1, 4: 1, 6: 2, 8: 3, 9: 1, 10: 5})
        self.assertEqual(type_string(parse_type_string(text)), text)

    def test_half_integer_weights(self):
        self.assertEqual(type_string({Fraction(1, 2): 2, 2: 1}), 'W(1/2^2,2)')

    def test_invalid(self):
        for text in ('V(2,4)', 'W(2,,4)', 'W(2^x)', 'W(2,2)'):
            with self.assertRaises(TypeStringError):
                parse_type_string(text)


def _counts(catalog, generic_only=False):
    entries = catalog.generic() if generic_only else catalog.entries
    counts = {}
    for entry in entries:
        counts[entry.weight] = counts.get(entry.weight, 0) + 1
    return counts
