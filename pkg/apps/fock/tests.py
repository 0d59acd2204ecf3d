"""Tests de l'application fock : moteur de Wick et axiomes d'algèbre vertex."""

import random
from fractions import Fraction
from math import comb
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from apps.freefield.services import (
    heisenberg_extension, make_standard_algebra, tensor_product, wfree_sln,
)
from apps.scalars.models import ExtScalar

from .exceptions import MixedAlgebras, NotInSubalgebra
from .models import FieldElement, canonicalize, monomial_weight2
from .serializers import deserialize_element, serialize_element
from .services import (
    WickEngine, derivative, derivative_power, divided_derivative, embed, generator, get_engine,
    normal_order, nth_product, project_to_subalgebra, reset_engines, vacuum,
)
from . import services


def u_field(algebra, i, j, a, b):
    return normal_order(generator(algebra, f'W{2 * i + 1}', a), generator(algebra, f'W{2 * j + 1}', b))


def alternating(exponent):
    return -1 if exponent % 2 else 1


def parity(x):
    monomial = next(iter(x.terms))
    return sum(1 for g, _d in monomial if x.algebra.odd_flags[g]) % 2


def random_element(rng, algebra, max_weight2, terms=2):
    """Élément homogène aléatoire : monômes de même poids et même parité."""
    target = None
    result = FieldElement(algebra)
    attempts = 0
    while len(result.terms) < terms and attempts < 200:
        attempts += 1
        legs = [(rng.randrange(algebra.size), rng.randint(0, 2)) for _ in range(rng.randint(1, 3))]
        sign, monomial = canonicalize(legs, algebra.odd_flags)
        if not sign:
            continue
        weight2 = monomial_weight2(monomial, algebra.weight2s)
        odd = sum(1 for g, _d in monomial if algebra.odd_flags[g]) % 2
        if weight2 > max_weight2 or (target is not None and target != (weight2, odd)):
            continue
        target = (weight2, odd)
        coefficient = Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4))
        result = result + FieldElement.from_monomial(algebra, monomial, coefficient)
    return result


class GeneratorProductTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_pairing_is_reproduced(self):
        w3 = generator(self.algebra, 'W3')
        self.assertEqual(nth_product(w3, 5, w3), vacuum(self.algebra))
        for n in range(0, 5):
            self.assertTrue(nth_product(w3, n, w3).is_zero())

    def test_distinct_flavors_do_not_pair(self):
        w3, w4 = generator(self.algebra, 'W3'), generator(self.algebra, 'W4')
        for n in range(0, 8):
            self.assertTrue(nth_product(w3, n, w4).is_zero())

    def test_derivative_mode(self):
        w3 = generator(self.algebra, 'W3')
        self.assertEqual(nth_product(derivative(w3), 6, w3), -6 * vacuum(self.algebra))

    def test_u33_mode_three(self):
        u = u_field(self.algebra, 1, 1, 0, 0)
        self.assertEqual(nth_product(u, 3, u), 2 * u_field(self.algebra, 1, 1, 0, 2))

    def test_u35_square(self):
        algebra = wfree_sln(5)
        u = u_field(algebra, 1, 2, 0, 0)
        expected = u_field(algebra, 2, 2, 0, 0) + Fraction(1, 24) * u_field(algebra, 1, 1, 4, 0)
        self.assertEqual(nth_product(u, 5, u), expected)

    def test_weight_law(self):
        u = u_field(self.algebra, 1, 1, 0, 0)
        w4 = generator(self.algebra, 'W4', 1)
        for n in range(-2, 8):
            result = nth_product(u, n, w4)
            for weight2 in result.weights2():
                self.assertEqual(weight2, 12 + 10 - 2 * n - 2)

    def test_mixed_algebras(self):
        with self.assertRaises(MixedAlgebras):
            nth_product(generator(self.algebra, 'L'), 0, generator(wfree_sln(5), 'L'))

    def test_memo_is_invisible(self):
        engine = WickEngine(self.algebra, memo_size=0)
        u = u_field(self.algebra, 1, 1, 0, 0)
        result = engine.product(u, 3, u)
        self.assertEqual(result, nth_product(u, 3, u))


class DerivativeTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_single_leg(self):
        w3 = generator(self.algebra, 'W3')
        self.assertEqual(derivative(w3), generator(self.algebra, 'W3', 1))

    def test_leibniz(self):
        w3 = generator(self.algebra, 'W3')
        u = normal_order(w3, w3)
        self.assertEqual(derivative(u), 2 * normal_order(derivative(w3), w3))

    def test_vacuum(self):
        self.assertTrue(derivative(vacuum(self.algebra)).is_zero())

    def test_divided_derivative(self):
        w3 = generator(self.algebra, 'W3')
        self.assertEqual(divided_derivative(w3, 3), Fraction(1, 6) * generator(self.algebra, 'W3', 3))


class NormalOrderTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_u33_01(self):
        self.assertEqual(u_field(self.algebra, 1, 1, 0, 1),
                         Fraction(1, 2) * derivative(u_field(self.algebra, 1, 1, 0, 0)))

    def test_u33_11(self):
        expected = -u_field(self.algebra, 1, 1, 0, 2) \
            + Fraction(1, 2) * derivative_power(u_field(self.algebra, 1, 1, 0, 0), 2)
        self.assertEqual(u_field(self.algebra, 1, 1, 1, 1), expected)

    def test_even_flavors_commute(self):
        w3, w4 = generator(self.algebra, 'W3'), generator(self.algebra, 'W4')
        self.assertEqual(normal_order(w3, w4), normal_order(w4, w3))
        self.assertEqual(len(normal_order(w3, w3).terms), 1)

    def test_fermions_anticommute(self):
        fermions = make_standard_algebra('O_odd', 2, 1)
        a1, a2 = generator(fermions, 'a1'), generator(fermions, 'a2')
        self.assertEqual(normal_order(a1, a2), -normal_order(a2, a1))
        self.assertTrue(normal_order(a1, a1).is_zero())
        self.assertEqual(nth_product(a1, 0, a1), vacuum(fermions))

    def test_supercommutativity_on_legs(self):
        algebra = tensor_product(make_standard_algebra('O_odd', 2, 1, 'psi'),
                                 make_standard_algebra('S_ev', 1, 1, 'bg'), label='mixed')
        legs = [generator(algebra, g.name, der) for g in algebra.generators for der in (0, 1)]
        for a in legs:
            for b in legs:
                sign = -1 if parity(a) and parity(b) else 1
                self.assertEqual(normal_order(a, b), sign * normal_order(b, a))

    def test_beta_gamma_pairing(self):
        algebra = make_standard_algebra('S_ev', 1, 1)
        a, b = generator(algebra, 'a1'), generator(algebra, 'b1')
        self.assertEqual(nth_product(a, 0, b), vacuum(algebra))
        self.assertEqual(nth_product(b, 0, a), -vacuum(algebra))


class AxiomTests(SimpleTestCase):
    """Axiomes d'algèbre vertex sur des éléments aléatoires homogènes."""

    samples = 12
    max_weight2 = 12

    def algebras(self):
        return [
            wfree_sln(5),
            tensor_product(make_standard_algebra('O_odd', 2, 1, 'psi'),
                           make_standard_algebra('S_ev', 1, 1, 'bg'),
                           make_standard_algebra('S_odd', 1, 2, 'bc'), label='mixed'),
        ]

    def pairs(self, rng):
        for algebra in self.algebras():
            for _ in range(self.samples):
                a = random_element(rng, algebra, self.max_weight2)
                b = random_element(rng, algebra, self.max_weight2)
                yield algebra, a, b

    def mode_window(self, a, b):
        top = (max(a.weights2()) + max(b.weights2())) // 2 + 1
        return range(-2, top + 1)

    def check_vacuum(self, a):
        one = vacuum(a.algebra)
        self.assertEqual(nth_product(one, -1, a), a)
        self.assertTrue(nth_product(one, 0, a).is_zero())
        self.assertTrue(nth_product(a, 0, one).is_zero())
        self.assertEqual(nth_product(a, -1, one), a)

    def check_derivative(self, a, b):
        for n in self.mode_window(a, b):
            self.assertEqual(nth_product(derivative(a), n, b), -n * nth_product(a, n - 1, b))
            self.assertEqual(derivative(nth_product(a, n, b)),
                             nth_product(derivative(a), n, b) + nth_product(a, n, derivative(b)))

    def check_skew_symmetry(self, a, b):
        sign = -1 if parity(a) and parity(b) else 1
        top = (max(a.weights2()) + max(b.weights2())) // 2
        for n in self.mode_window(a, b):
            total = FieldElement(a.algebra)
            for j in range(0, top - n + 2):
                total = total + alternating(n + j + 1) * divided_derivative(nth_product(a, n + j, b), j)
            self.assertEqual(nth_product(b, n, a), sign * total)

    def check_commutator(self, a, b, c, m_modes, n_modes):
        sign = -1 if parity(a) and parity(b) else 1
        for m in m_modes:
            for n in n_modes:
                left = nth_product(a, m, nth_product(b, n, c)) \
                    - sign * nth_product(b, n, nth_product(a, m, c))
                right = FieldElement(a.algebra)
                for j in range(0, m + 1):
                    right = right + comb(m, j) * nth_product(nth_product(a, j, b), m + n - j, c)
                self.assertEqual(left, right, f'm={m}, n={n}')

    def test_vacuum_axioms(self):
        rng = random.Random(11)
        for _algebra, a, _b in self.pairs(rng):
            self.check_vacuum(a)

    def test_derivative_axioms(self):
        rng = random.Random(12)
        for _algebra, a, b in self.pairs(rng):
            self.check_derivative(a, b)

    def test_skew_symmetry(self):
        rng = random.Random(13)
        for _algebra, a, b in self.pairs(rng):
            self.check_skew_symmetry(a, b)

    def test_commutator_formula(self):
        rng = random.Random(14)
        for algebra, a, b in self.pairs(rng):
            c = random_element(rng, algebra, 8)
            self.check_commutator(a, b, c, range(0, 3), range(-1, 3))

    @skipUnless(settings.VAW_SETTINGS['SLOW'], 'VAW_SLOW désactivé')
    def test_axioms_on_larger_sample(self):
        rng = random.Random(15)
        algebra = wfree_sln(5)
        for _ in range(100):
            a = random_element(rng, algebra, 20, terms=3)
            b = random_element(rng, algebra, 20, terms=3)
            c = random_element(rng, algebra, 8, terms=1)
            for x in (a, b, c):
                self.assertLessEqual(max(x.weights2()), 20)
                self.check_vacuum(x)
            self.check_derivative(a, b)
            self.check_skew_symmetry(a, b)
            top_ac = (max(a.weights2()) + max(c.weights2())) // 2
            top_bc = (max(b.weights2()) + max(c.weights2())) // 2
            self.check_commutator(a, b, c, range(0, top_ac), range(-1, top_bc))


class EmbeddingTests(SimpleTestCase):

    def setUp(self):
        self.heisenberg, self.embedding, self.nu = heisenberg_extension(2)

    def test_embedded_pairing(self):
        for name in ('W3', 'W5'):
            image = self.embedding.image(name)
            weight = 3 if name == 'W3' else 5
            self.assertEqual(nth_product(image, 2 * weight - 1, image), vacuum(self.heisenberg))
        self.assertTrue(nth_product(self.embedding.image('W3'), 9, self.embedding.image('W5')).is_zero())

    def test_nu_weight(self):
        self.assertEqual(self.nu.weights2(), {8})
        self.assertEqual(len(self.nu.terms), 2)

    def test_projection(self):
        alpha = generator(self.heisenberg, 'alpha3', 2)
        projected = project_to_subalgebra(normal_order(alpha, alpha), self.embedding)
        w3 = generator(self.embedding.source, 'W3')
        self.assertEqual(projected, 120 * normal_order(w3, w3))

    def test_projection_rejects_low_derivative(self):
        with self.assertRaises(NotInSubalgebra):
            project_to_subalgebra(generator(self.heisenberg, 'alpha3', 1), self.embedding)

    def test_round_trip(self):
        source = self.embedding.source
        w3, w5 = generator(source, 'W3'), generator(source, 'W5', 1)
        for element in (normal_order(w3, w3), normal_order(w3, w5), derivative(normal_order(w3, w5))):
            projected = project_to_subalgebra(embed(element, self.embedding), self.embedding)
            self.assertEqual(projected, element)
            self.assertTrue(projected.is_rational())

    def test_image_scalars(self):
        source = self.embedding.source
        w3, w5 = generator(source, 'W3'), generator(source, 'W5')
        alpha3 = generator(self.heisenberg, 'alpha3', 2)
        square = embed(normal_order(w3, w3), self.embedding)
        self.assertTrue(square.is_rational())
        self.assertEqual(square, Fraction(1, 120) * normal_order(alpha3, alpha3))
        self.assertFalse(embed(normal_order(w3, w5), self.embedding).is_rational())

    def test_image_coefficient(self):
        image = self.embedding.image('W5')
        ((_monomial, coefficient),) = image.terms.items()
        self.assertEqual(coefficient * ExtScalar.symbol(2), Fraction(1))


class EngineRegistryTests(SimpleTestCase):

    def setUp(self):
        reset_engines()

    def tearDown(self):
        reset_engines()

    def test_one_engine_per_algebra(self):
        algebra = wfree_sln(4)
        self.assertIs(get_engine(algebra), get_engine(wfree_sln(4)))

    def test_registry_is_bounded(self):
        with override_settings(VAW_SETTINGS={**settings.VAW_SETTINGS, 'MAX_ENGINES': 2}):
            first = get_engine(wfree_sln(4))
            get_engine(wfree_sln(5))
            get_engine(wfree_sln(6))
            self.assertEqual(len(services._engines), 2)
            self.assertNotIn(wfree_sln(4), services._engines)
            self.assertIsNot(get_engine(wfree_sln(4)), first)

    def test_memo_is_reused(self):
        algebra = wfree_sln(4)
        w3 = generator(algebra, 'W3')
        nth_product(w3, 1, w3)
        misses = get_engine(algebra).cache_info().misses
        nth_product(w3, 1, w3)
        info = get_engine(algebra).cache_info()
        self.assertEqual(info.misses, misses)
        self.assertGreater(info.hits, 0)

    def test_memo_disabled(self):
        self.assertIsNone(WickEngine(wfree_sln(4), memo_size=0).cache_info())


class SerializationTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(4)

    def test_vacuum(self):
        self.assertEqual(serialize_element(vacuum(self.algebra)),
                         '{"schema":"1","terms":[{"coeff":"1","legs":[]}]}')

    def test_half_derivative(self):
        u = u_field(self.algebra, 1, 1, 0, 0)
        text = serialize_element(Fraction(1, 2) * derivative(u))
        self.assertEqual(text, '{"schema":"1","terms":[{"coeff":"1","legs":'
                               '[{"gen":"W3","der":1},{"gen":"W3","der":0}]}]}')

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(10):
            x = random_element(rng, self.algebra, 16, terms=3)
            self.assertEqual(deserialize_element(serialize_element(x), self.algebra), x)
