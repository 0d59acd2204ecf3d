"""Tests de l'application relations."""

import tempfile
from collections import Counter
from fractions import Fraction
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from apps.core.cache import BasisCache
from apps.fock.models import FieldElement
from apps.fock.services import derivative, derivative_power, generator, normal_order, nth_product, vacuum
from apps.freefield.services import make_spec, make_standard_algebra, rescale, spec_hash, wfree_sln
from apps.orbifold.models import ANTI_INVARIANT, FULL, INVARIANT, LONG, MINIMAL_SL7_FREE, STRONG_FREE, UIndex
from apps.orbifold.services import U, custom_catalog, generator_catalog
from apps.scalars import linalg
from apps.series.services import character, nk_formula, stable_profile

from .exceptions import (
    IdentityDomainError, InhomogeneousInput, InvalidBound, UnknownIdentity, UnsupportedSector,
)
from .identities import odd_coefficient, verify_identity
from .models import INFEASIBLE, SOLVED, Letter, TypeProfile
from .serializers import IdentityReportSerializer, RelationReportSerializer, TypeProfileSerializer
from .services import (
    decouple, expand_combination, minimal_generators, sector_classes, span_rank, weak_closure,
    weight_basis,
)

SLOW = settings.VAW_SETTINGS['SLOW']


class WeightBasisTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_weight_four_invariant(self):
        basis = weight_basis(self.algebra, 4, INVARIANT)
        self.assertEqual(len(basis), 3)
        self.assertEqual(set(basis.labels()), {'W4', 'D^2 L', 'NO(L, L)'})

    def test_weight_five_invariant(self):
        labels = weight_basis(self.algebra, 5, INVARIANT).labels()
        self.assertEqual(len(labels), 3)
        self.assertTrue({'D^3 L', 'D W4'} <= set(labels))
        self.assertEqual(len(weight_basis(self.algebra, 5, ANTI_INVARIANT)), 2)

    def test_weight_three_invariant(self):
        self.assertEqual(weight_basis(self.algebra, 3, INVARIANT).labels(), ['D L'])

    def test_vacuum(self):
        basis = weight_basis(self.algebra, 0, FULL)
        self.assertEqual(basis.monomials, ((),))
        self.assertEqual(basis.elements(), [vacuum(self.algebra)])

    def test_canonical_order(self):
        basis = weight_basis(self.algebra, 9, FULL)
        self.assertEqual(list(basis.monomials), sorted(set(basis.monomials)))

    def test_agrees_with_series(self):
        for sector in (FULL, INVARIANT, ANTI_INVARIANT):
            series = character(self.algebra, sector, 12)
            for d in range(13):
                self.assertEqual(len(weight_basis(self.algebra, d, sector)), series.at_weight(d))

    def test_half_integer_weights(self):
        algebra = make_standard_algebra('O_odd', 2, 1)
        series = character(algebra, FULL, 4)
        for d2 in range(9):
            self.assertEqual(len(weight_basis(algebra, Fraction(d2, 2), FULL)),
                             series.at_weight(Fraction(d2, 2)))

    def test_invalid_weight(self):
        with self.assertRaises(InvalidBound):
            weight_basis(self.algebra, -1)

    def test_cache(self):
        with tempfile.TemporaryDirectory() as directory:
            cache = BasisCache(directory)
            first = weight_basis(self.algebra, 6, INVARIANT, cache)
            stored = cache.get('basis', spec_hash(self.algebra), 12, INVARIANT)
            self.assertEqual(tuple(stored), first.monomials)
            self.assertEqual(weight_basis(self.algebra, 6, INVARIANT, cache), first)


class SpanRankTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_first_derivative(self):
        elements = [U(1, 1, 0, 1, self.algebra), derivative(U(1, 1, 0, 0, self.algebra))]
        self.assertEqual(span_rank(elements), 1)

    def test_second_derivative(self):
        elements = [
            U(1, 1, 0, 2, self.algebra),
            U(1, 1, 1, 1, self.algebra),
            derivative_power(U(1, 1, 0, 0, self.algebra), 2),
        ]
        self.assertEqual(span_rank(elements), 2)

    def test_single(self):
        self.assertEqual(span_rank([generator(self.algebra, 'W4')]), 1)

    def test_mixed_weights(self):
        with self.assertRaises(InhomogeneousInput):
            span_rank([generator(self.algebra, 'W4'), generator(self.algebra, 'W3')])


class SectorClassTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_classes(self):
        x = U(1, 1, 0, 0, self.algebra) + normal_order(generator(self.algebra, 'L'),
                                                       generator(self.algebra, 'W4'))
        self.assertEqual(set(sector_classes(x)), {(0, 0, 0), (1, 0, 1)})

    def test_products_preserve_classes(self):
        a = normal_order(generator(self.algebra, 'L'), generator(self.algebra, 'W3'))
        b = normal_order(generator(self.algebra, 'W3', 1), generator(self.algebra, 'W4'))
        for n in range(-2, 6):
            product = nth_product(a, n, b)
            if product.is_zero():
                continue
            self.assertEqual(set(sector_classes(product)), {(1, 0, 1)})


class DecoupleTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)
        self.strong = generator_catalog(4, STRONG_FREE)

    def test_single_derivative_word(self):
        gens = custom_catalog(4, [UIndex(1, 1)])
        target = derivative_power(U(1, 1, 0, 0, self.algebra), 2)
        report = decouple(target, gens)
        self.assertEqual(report.status, SOLVED)
        (term,) = report.combination
        self.assertEqual(term.coefficient, 1)
        self.assertEqual(term.letters, (Letter(gens.entries[0], 2),))
        self.assertEqual(term.expression, 'D^2 U(1,1,0,0)')

    def test_weight_fourteen(self):
        target = U(1, 1, 0, 8, self.algebra)
        report = decouple(target, self.strong)
        self.assertTrue(report.solved)
        self.assertTrue(report.residual.is_zero())
        self.assertEqual(expand_combination(report), target)
        self.assertEqual(max(term.degree for term in report.combination), 2)

    def test_word_degree_knob(self):
        report = decouple(U(1, 1, 0, 8, self.algebra), self.strong, max_word_degree=1)
        self.assertEqual(report.status, INFEASIBLE)
        with self.assertRaises(InvalidBound):
            decouple(U(1, 1, 0, 8, self.algebra), self.strong, max_word_degree=0)

    def test_low_weight_generators_are_not_decoupled(self):
        for a in range(3):
            report = decouple(U(1, 1, 0, 2 * a, self.algebra), self.strong)
            self.assertEqual(report.status, INFEASIBLE)
            certificate = report.certificate
            self.assertEqual(certificate['rank_with_target'], certificate['rank_span'] + 1)

    def test_weight_zero(self):
        report = decouple(vacuum(self.algebra) * 3, self.strong)
        self.assertTrue(report.solved)
        self.assertEqual(report.combination[0].coefficient, 3)
        self.assertEqual(report.combination[0].expression, '1')

    def test_sector_mismatch(self):
        report = decouple(generator(self.algebra, 'W3', 3), self.strong)
        self.assertEqual(report.status, INFEASIBLE)
        self.assertEqual(report.certificate, {'reason': 'sector-mismatch'})

    def test_inhomogeneous_target(self):
        target = generator(self.algebra, 'W4') + U(1, 1, 0, 0, self.algebra)
        with self.assertRaises(InhomogeneousInput):
            decouple(target, self.strong)

    def test_rescaling_keeps_status(self):
        algebra, _factors = rescale(self.algebra, {'W3': 2, 'L': 3})
        self.assertTrue(decouple(U(1, 1, 0, 8, algebra), self.strong).solved)
        self.assertFalse(decouple(U(1, 1, 0, 4, algebra), self.strong).solved)

    def test_sl7_weight_sixteen(self):
        algebra = wfree_sln(7)
        gens = generator_catalog(7, LONG, bound=15)
        for index in ((1, 1, 0, 10), (1, 2, 0, 8), (2, 2, 0, 6)):
            self.assertTrue(decouple(U(*index, algebra), gens).solved, index)
        for index in ((1, 3, 0, 6), (2, 3, 0, 4), (3, 3, 0, 2)):
            self.assertEqual(decouple(U(*index, algebra), gens).status, INFEASIBLE, index)

    def test_serialization(self):
        report = decouple(U(1, 1, 0, 8, self.algebra), self.strong)
        data = RelationReportSerializer(report).data
        self.assertEqual(data['status'], SOLVED)
        self.assertEqual(data['residual'], [])
        self.assertTrue(all(term['word'].startswith(('NO(', 'D')) for term in data['combination']))


class MinimalGeneratorTests(SimpleTestCase):

    def test_sl4(self):
        profile = minimal_generators(wfree_sln(4), INVARIANT, 12)
        self.assertEqual(profile, {2: 1, 4: 1, 6: 1, 8: 1, 10: 1, 12: 1})
        self.assertEqual(str(profile), 'W(2,4,6,8,10,12)')

    def test_sl5(self):
        profile = minimal_generators(wfree_sln(5), INVARIANT, 14)
        self.assertEqual(str(profile), 'W(2,4,6,8^2,9,10^3,11,12^3,13,14^2)')

    def test_factorization_agrees(self):
        algebra = wfree_sln(4)
        self.assertEqual(minimal_generators(algebra, INVARIANT, 10, factorize=False),
                         minimal_generators(algebra, INVARIANT, 10))

    def test_generator_order(self):
        algebra = wfree_sln(5)
        order = (2, 0, 3, 1)
        permuted = make_spec([algebra.generators[g] for g in order],
                             [[algebra.pairing[g][h] for h in order] for g in order], 'permuted')
        self.assertEqual(tuple(permuted.names), ('W4', 'L', 'W5', 'W3'))
        self.assertEqual(minimal_generators(permuted, INVARIANT, 12),
                         minimal_generators(algebra, INVARIANT, 12))

    def test_full_sector(self):
        self.assertEqual(minimal_generators(wfree_sln(4), FULL, 6), {2: 1, 3: 1, 4: 1})

    def test_errors(self):
        with self.assertRaises(UnsupportedSector):
            minimal_generators(wfree_sln(4), ANTI_INVARIANT, 6)
        with self.assertRaises(InvalidBound):
            minimal_generators(wfree_sln(4), INVARIANT, 1)

    def test_large_n_matches_stable_counts(self):
        profile = minimal_generators(wfree_sln(12), INVARIANT, 14)
        self.assertEqual(profile.restricted(high=13), stable_profile(13))
        # W14 manque à n = 12
        self.assertEqual(profile[14], nk_formula(14) - 1)

    def test_serialization(self):
        data = TypeProfileSerializer(TypeProfile({2: 1, 6: 2})).data
        self.assertEqual(data['type'], 'W(2,6^2)')
        self.assertEqual(data['counts'], [{'weight': '2', 'count': 1}, {'weight': '6', 'count': 2}])

    @skipUnless(SLOW, 'VAW_SLOW désactivé')
    def test_sl6(self):
        profile = minimal_generators(wfree_sln(6), INVARIANT, 14)
        self.assertEqual(str(profile), 'W(2,4,6^2,8^2,9,10^3,11,12^3,13,14^2)')

    @skipUnless(SLOW, 'VAW_SLOW désactivé')
    def test_sl7_free_limit(self):
        profile = minimal_generators(wfree_sln(7), INVARIANT, 18)
        self.assertEqual(profile.restricted(low=16), {16: 3, 17: 1, 18: 1})
        catalog = generator_catalog(7, MINIMAL_SL7_FREE)
        below = Counter(entry.weight for entry in catalog if entry.weight <= 15)
        self.assertEqual(profile.restricted(high=15), TypeProfile(below))

    @skipUnless(SLOW, 'VAW_SLOW désactivé')
    def test_sl16_stable_range(self):
        profile = minimal_generators(wfree_sln(16), INVARIANT, 16)
        self.assertEqual([profile[k] for k in range(12, 17)], [7, 4, 9, 5, 10])


class WeakClosureTests(SimpleTestCase):

    def test_virasoro_only(self):
        report = weak_closure(custom_catalog(4, ['L']), 2)
        self.assertEqual(report.dimensions, {2: (1, 1)})
        self.assertTrue(report.saturated)
        self.assertTrue(report.stable)

    def test_even_generators_miss_w3_squares(self):
        report = weak_closure(custom_catalog(4, ['L', 'W4']), 6)
        self.assertFalse(report.saturated)
        self.assertIn(6, report.missing())
        obtained, expected = report.dimensions[6]
        self.assertEqual(expected - obtained, report.missing()[6])

    def test_sl4_generators_saturate(self):
        report = weak_closure(custom_catalog(4, ['L', 'W4', UIndex(1, 1)]), 8)
        self.assertTrue(report.saturated, report.missing())

    def test_bounds(self):
        with self.assertRaises(InvalidBound):
            weak_closure(custom_catalog(4, ['L']), 4, product_depth=0)

    @skipUnless(SLOW, 'VAW_SLOW désactivé')
    def test_sl4_generators_saturate_to_twelve(self):
        report = weak_closure(custom_catalog(4, ['L', 'W4', UIndex(1, 1)]), 12)
        self.assertTrue(report.saturated, report.missing())


class IdentityTests(SimpleTestCase):

    def assertHolds(self, name, **params):
        report = verify_identity(name, params)
        self.assertTrue(report.holds, f'{name} {params}: {report.computed} / {report.displayed}')
        return report

    def test_weight_fourteen(self):
        report = self.assertHolds('wt14')
        self.assertEqual(report.computed, report.displayed)
        self.assertEqual(report.lhs, report.rhs)

    def test_weight_sixteen(self):
        report = self.assertHolds('wt16')
        self.assertEqual(report.computed[0], Fraction(-1, 7200))

    def test_u22_rewrite(self):
        report = self.assertHolds('u22_rewrite')
        self.assertEqual(report.computed, (1, -2, Fraction(1, 2)))
        self.assertTrue(report.erratum)

    def test_raising_operators(self):
        for a in range(4):
            self.assertHolds('raise33_3', a=a)
            self.assertHolds('raise33_1', m=a)
        self.assertEqual(verify_identity('raise33_3', {'a': 0}).computed[0], 2)

    def test_cross_raising(self):
        for a in range(4):
            self.assertHolds('raise_cross_4', i=2, a=a)
        self.assertHolds('cross_5', i=2, j=3, a=0)
        self.assertHolds('cross_5', i=2, j=3, a=2)

    def test_square(self):
        self.assertEqual(self.assertHolds('square_5', i=2).displayed, (1, Fraction(1, 24)))
        self.assertHolds('square_5', i=3)

    def test_odd_relations(self):
        report = self.assertHolds('odd7', i=2)
        self.assertEqual(report.computed, (Fraction(11, 5040),))
        self.assertEqual(report.labels, ('U^{3,5}_{7,0}',))
        report = self.assertHolds('odd8', i=3)
        self.assertEqual(report.computed, (Fraction(-1, 2880),))
        self.assertTrue(report.erratum)
        for r in range(1, 5):
            self.assertHolds('odd_r', i=2, r=r)
        self.assertEqual(odd_coefficient(1), Fraction(11, 5040))

    def test_cross_square(self):
        report = self.assertHolds('cross_square', i=1, j=2, r=0)
        self.assertEqual(report.computed, (Fraction(-1, 3628800), Fraction(-1, 720)))
        self.assertHolds('cross_square', i=1, j=2, r=1)
        self.assertHolds('cross_square', i=2, j=3, r=0)

    def test_lastone(self):
        for r in range(3):
            self.assertHolds('lastone', i=2, j=3, r=r)

    def test_nu_raising(self):
        report = self.assertHolds('nu_raising', i=2, a=0)
        self.assertEqual(report.computed[0], 20)
        self.assertHolds('nu_raising', i=2, a=1)
        self.assertHolds('nu_raising', i=3, a=0)

    def test_nu_raising_grid(self):
        for i in (1, 2, 3):
            for a in (0, 1, 2):
                report = self.assertHolds('nu_raising', i=i, a=a)
                self.assertEqual(report.computed[0], 12 + 2 * a + 4 * i)
                self.assertTrue(report.lhs.is_rational())

    def test_nu_raising_square_leading_is_forced(self):
        for a in (0, 2):
            report = verify_identity('nu_raising', {'i': 1, 'a': a})
            source = report.lhs.algebra
            m = a + 2
            rest = [derivative_power(U(1, 1, 0, m - b, source), b).terms for b in range(1, m + 1)]
            wrong = report.computed[0] + 1
            shifted = report.lhs - wrong * U(1, 1, 0, m, source)
            self.assertIsNone(linalg.solve_in_columns(rest, shifted.terms))

    def test_domain_errors(self):
        with self.assertRaises(IdentityDomainError):
            verify_identity('raise_cross_4', {'i': 1, 'a': 0})
        with self.assertRaises(IdentityDomainError):
            verify_identity('nu_raising', {'i': 2})
        with self.assertRaises(IdentityDomainError):
            verify_identity('wt14', {'a': 1})
        with self.assertRaises(UnknownIdentity):
            verify_identity('wt18')

    def test_serialization(self):
        data = IdentityReportSerializer(verify_identity('odd7', {'i': 2})).data
        self.assertTrue(data['holds'])
        self.assertEqual(data['computed'], ['11/5040'])
        self.assertEqual(data['displayed'], ['11/5040'])
        self.assertEqual(data['params'], {'i': 2})

    def test_lhs_is_rational_element(self):
        report = verify_identity('nu_raising', {'i': 2, 'a': 0})
        self.assertIsInstance(report.lhs, FieldElement)
        self.assertTrue(report.lhs.is_rational())
